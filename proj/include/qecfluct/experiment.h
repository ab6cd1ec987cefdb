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

#ifndef QECFLUCT_EXPERIMENT_H
#define QECFLUCT_EXPERIMENT_H

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qecfluct/channel.h"
#include "qecfluct/codes.h"
#include "qecfluct/effective.h"
#include "qecfluct/noise.h"

namespace qecfluct {

struct ExperimentConfig {
    std::string code = "five";
    BaseModelSpec base;
    double k = 0.0;
    bool allow_large_k = false;
    std::int64_t n0 = 0;
    int levels = 1;
    std::uint64_t seed = 0;
    int histogram_bins = 60;
    std::string out_dir;
    /// 0 picks std::thread::hardware_concurrency().
    int workers = 0;

    PerturbedModelSpec noise() const {
        return PerturbedModelSpec{base, k, allow_large_k};
    }
};

/// Throws kInvalidArgument when n0 is not a multiple of n^levels, levels < 1,
/// or the noise spec is invalid.
void validate(const ExperimentConfig &cfg, int code_n);

/// Optional ratio; absent when the denominator is below 1e-15.
using Ratio = std::optional<double>;
inline constexpr double kRatioFloor = 1e-15;
Ratio attenuation_ratio(double previous, double current);

struct Histogram {
    double low = 0.0;
    double high = 0.0;
    std::vector<std::int64_t> counts;

    double bin_low(size_t i) const;
    double bin_high(size_t i) const;
};

/// Uniform bins over [min, max]; the top edge lands in the last bin.
Histogram make_histogram(std::span<const double> values, int bins);

struct LevelStats {
    int level = 0;
    std::int64_t samples = 0;
    PauliTransferMatrix strict_avg_ptm;
    double strict_avg_fidelity = 0.0;
    PauliTransferMatrix sample_mean_ptm;
    double sample_mean_fidelity = 0.0;
    Eigen::Matrix4d sd_ptm = Eigen::Matrix4d::Zero();
    double sd_fidelity = 0.0;
    /// Level >= 1 only.
    Ratio ratio_fidelity;
    std::array<std::array<Ratio, 4>, 4> ratio_ptm{};
    double fidelity_min = 0.0;
    double fidelity_max = 0.0;
    Histogram histogram;

    /// r = 1 - F of the sample mean.
    double error_rate() const {
        return 1.0 - sample_mean_fidelity;
    }
    double strict_error_rate() const {
        return 1.0 - strict_avg_fidelity;
    }
};

/// Statistics of one level: divisor N, deviations against the strict average.
LevelStats level_statistics(int level, std::span<const PauliTransferMatrix> channels,
                            const PauliTransferMatrix &strict_avg, int bins);

/// Attaches R_F and R_mu_nu of `current` relative to `previous`.
void attach_ratios(const LevelStats &previous, LevelStats &current);

struct MonteCarloResult {
    ExperimentConfig config;
    std::vector<LevelStats> levels;
    double wall_seconds = 0.0;
};

/// Runs `body(i)` for i in [0, count) over `workers` threads. Output written
/// by index gives results independent of scheduling.
void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)> &body);
int resolve_workers(int requested);

/// Desk-scale sample count for a code, rounded up to a multiple of n^levels:
/// 12500 (five), 9800 (steane), 7290 (shor).
std::int64_t desk_default_n0(const CodeSpec &code, int levels);

MonteCarloResult run_montecarlo(const ExperimentConfig &cfg);
MonteCarloResult run_montecarlo(const ExperimentConfig &cfg, const CodeSpec &code,
                                const EffectiveChannelEngine &engine);

struct RoughEstimate {
    /// Estimated dF at levels 0..L.
    std::vector<double> sd;
    /// Fitted R_F at levels 1..L (index 0 unused, 0).
    std::vector<double> ratio;
};

/// 5-qubit fit: dF0 = 0.354143 k - 0.0112724 k^2, R = 0.861795 + 0.300709 / sqrt(1 - F).
/// fidelities[l] is F_avg(l); entry 0 is not used.
RoughEstimate rough_estimate_sd(double k, std::span<const double> fidelities);
double rough_fit_ratio(double fidelity);

struct AttenuationRow {
    int level = 0;
    Ratio ratio_fidelity;
    std::array<std::array<Ratio, 4>, 4> ratio_ptm{};
    /// Over the 3x3 Bloch block; absent ratios are skipped.
    Ratio min_diagonal;
    Ratio max_diagonal;
    Ratio min_off_diagonal;
    /// min off-diagonal ratio / max diagonal ratio.
    Ratio off_diagonal_speedup;
    /// How many off-diagonal ratios were absent.
    int absent_off_diagonal = 0;
};

struct AttenuationReport {
    std::vector<AttenuationRow> rows;
    /// Pearson correlation between R_F and the mean diagonal R over levels,
    /// when at least three levels carry both.
    Ratio fidelity_diagonal_correlation;
};

AttenuationReport attenuation_report(std::span<const LevelStats> stats);

struct ThresholdOptions {
    double tolerance = 1e-7;
    double bracket_low = 0.75;
    double bracket_high = 1.0;
    int max_iterations = 200;
    /// 0 selects desk_default_n0.
    std::int64_t n0 = 0;
    int levels = 2;
    std::uint64_t seed = 1;
    int workers = 0;
    /// Skip the Monte Carlo run.
    bool strict_only = false;
};

struct ThresholdResult {
    double threshold_fidelity = 0.0;
    double base_f = 0.0;
    double residual = 0.0;
    int iterations = 0;
    std::vector<LevelStats> stats;
};

/// Bisects F_avg(0) until |F_avg(1) - F_avg(0)| < tolerance, then runs one
/// Monte Carlo experiment at that point. Base f = (F0 - k/2) / (1 - k).
ThresholdResult threshold_search(const CodeSpec &code, const EffectiveChannelEngine &engine,
                                 const BaseModelSpec &base, double k, const ThresholdOptions &options);

enum class PauliForm { kX, kZ, kTie };
std::string_view pauli_form_name(PauliForm form);

struct OscillationLevel {
    int level = 0;
    double eta11 = 0.0;
    double eta33 = 0.0;
    PauliForm form = PauliForm::kTie;
    /// max(|1 - eta11|, |eta22 - eta33|, off-diagonals) and the Z analog.
    double distance_x = 0.0;
    double distance_z = 0.0;
};

struct OscillationReport {
    std::vector<OscillationLevel> levels;
    bool degenerate = false;
    bool alternates = false;
};

/// Levels >= 1 of the given PTMs (index = level).
OscillationReport shor_oscillation_report(std::span<const PauliTransferMatrix> ptms, double tie_tol = 1e-9);
OscillationReport shor_oscillation_report(std::span<const LevelStats> stats, double tie_tol = 1e-9);

}  // namespace qecfluct

#endif
