// Copyright 2026 The qecfluct Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QECFLUCT_EXPERIMENT_IO_H
#define QECFLUCT_EXPERIMENT_IO_H

#include <filesystem>
#include <string>

#include "json.hpp"
#include "qecfluct/experiment.h"

namespace qecfluct {

/// Scientific notation with 17 significant digits and a
/// '.' decimal separator regardless of locale.
std::string format_double(double v);

ExperimentConfig config_from_json(const nlohmann::json &j);
nlohmann::json config_to_json(const ExperimentConfig &cfg);
ExperimentConfig load_config(const std::filesystem::path &path);

std::string ptm_csv(const Eigen::Matrix4d &m);
std::string level_stats_csv(std::span<const LevelStats> levels);
std::string histogram_csv(const Histogram &h);

nlohmann::json level_stats_json(const LevelStats &s);
nlohmann::json attenuation_json(const AttenuationReport &r);
nlohmann::json oscillation_json(const OscillationReport &r);
nlohmann::json recursion_json(const AverageRecursionResult &r);

/// manifest.json, level_stats.csv, qpm_avg_l*.csv, qpm_sd_l*.csv,
/// qpm_strict_l*.csv and fidelity_hist_l*.csv.
void write_outputs(const MonteCarloResult &result, const std::filesystem::path &dir);

void write_text_file(const std::filesystem::path &path, const std::string &text);

}  // namespace qecfluct

#endif
