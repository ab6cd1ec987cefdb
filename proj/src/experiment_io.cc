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

#include "qecfluct/experiment_io.h"

#include <charconv>
#include <fstream>
#include <set>
#include <sstream>

#include "qecfluct/channel_io.h"

namespace qecfluct {

using nlohmann::json;

namespace {

constexpr const char *kVersion = "0.1.0";

std::string ratio_field(const Ratio &r) {
    return r ? format_double(*r) : std::string();
}

json ratio_json(const Ratio &r) {
    return r ? json(*r) : json(nullptr);
}

json matrix_json(const Eigen::Matrix4d &m) {
    json rows = json::array();
    for (int i = 0; i < 4; ++i) {
        rows.push_back({m(i, 0), m(i, 1), m(i, 2), m(i, 3)});
    }
    return rows;
}

void reject_unknown(const json &j, const std::set<std::string> &known, const std::string &where) {
    for (const auto &[key, value] : j.items()) {
        if (!known.count(key)) {
            throw Error(ErrorKind::kInvalidArgument, "unknown key \"" + key + "\" in " + where);
        }
    }
}

std::uint64_t parse_seed(const json &j) {
    if (j.is_number_unsigned()) {
        return j.get<std::uint64_t>();
    }
    if (j.is_number_integer() && j.get<std::int64_t>() >= 0) {
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }
    if (j.is_string()) {
        const std::string s = j.get<std::string>();
        std::uint64_t v = 0;
        const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec == std::errc() && ptr == s.data() + s.size()) {
            return v;
        }
    }
    throw Error(ErrorKind::kInvalidArgument, "seed must be a non-negative 64-bit integer");
}

}  // namespace

std::string format_double(double v) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::scientific, 16);
    if (ec != std::errc()) {
        throw Error(ErrorKind::kIo, "cannot format number");
    }
    return std::string(buf, ptr);
}

ExperimentConfig config_from_json(const json &j) {
    try {
        reject_unknown(j, {"code", "base", "k", "n0", "levels", "seed", "bins", "histogram_bins", "out_dir",
                           "workers", "allow_large_k"},
                       "config");
        ExperimentConfig cfg;
        cfg.code = j.at("code").get<std::string>();
        const json &b = j.at("base");
        reject_unknown(b, {"kind", "f", "fixture", "seed"}, "base");
        cfg.base.kind = parse_base_kind(b.at("kind").get<std::string>());
        if (cfg.base.kind == BaseKind::kFixture) {
            cfg.base.fixture = b.at("fixture").get<std::string>();
            cfg.base.f = b.contains("f") ? b.at("f").get<double>() : fixture_info(cfg.base.fixture).f;
        } else {
            cfg.base.f = b.at("f").get<double>();
        }
        if (b.contains("seed")) {
            cfg.base.seed = parse_seed(b.at("seed"));
        }
        cfg.k = j.at("k").get<double>();
        cfg.levels = j.at("levels").get<int>();
        cfg.seed = parse_seed(j.at("seed"));
        cfg.n0 = j.contains("n0") ? j.at("n0").get<std::int64_t>() : desk_default_n0(code_by_name(cfg.code), cfg.levels);
        if (j.contains("bins")) {
            cfg.histogram_bins = j.at("bins").get<int>();
        } else if (j.contains("histogram_bins")) {
            cfg.histogram_bins = j.at("histogram_bins").get<int>();
        }
        cfg.out_dir = j.value("out_dir", std::string());
        cfg.workers = j.value("workers", 0);
        cfg.allow_large_k = j.value("allow_large_k", false);
        return cfg;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kInvalidArgument, std::string("bad config: ") + e.what());
    }
}

json config_to_json(const ExperimentConfig &cfg) {
    json base = {{"kind", base_kind_name(cfg.base.kind)}, {"f", cfg.base.f}};
    if (cfg.base.kind == BaseKind::kFixture) {
        base["fixture"] = cfg.base.fixture;
    }
    if (cfg.base.kind == BaseKind::kRandomCptp) {
        base["seed"] = cfg.base.seed;
    }
    return {{"code", cfg.code},     {"base", base},          {"k", cfg.k},
            {"n0", cfg.n0},         {"levels", cfg.levels},  {"seed", cfg.seed},
            {"bins", cfg.histogram_bins}, {"out_dir", cfg.out_dir}, {"allow_large_k", cfg.allow_large_k}};
}

ExperimentConfig load_config(const std::filesystem::path &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kIo, "cannot open " + path.string());
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kInvalidArgument, path.string() + ": " + e.what());
    }
    return config_from_json(j);
}

std::string ptm_csv(const Eigen::Matrix4d &m) {
    std::string out;
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            out += format_double(m(i, j));
            out += j == 3 ? '\n' : ',';
        }
    }
    return out;
}

std::string level_stats_csv(std::span<const LevelStats> levels) {
    std::string out = "level,F_avg_strict,F_bar,dF,R_F,F_min,F_max\n";
    for (const auto &s : levels) {
        out += std::to_string(s.level) + ',' + format_double(s.strict_avg_fidelity) + ',' +
               format_double(s.sample_mean_fidelity) + ',' + format_double(s.sd_fidelity) + ',' +
               ratio_field(s.ratio_fidelity) + ',' + format_double(s.fidelity_min) + ',' +
               format_double(s.fidelity_max) + '\n';
    }
    return out;
}

std::string histogram_csv(const Histogram &h) {
    std::string out = "bin_low,bin_high,count\n";
    for (size_t i = 0; i < h.counts.size(); ++i) {
        out += format_double(h.bin_low(i)) + ',' + format_double(h.bin_high(i)) + ',' + std::to_string(h.counts[i]) +
               '\n';
    }
    return out;
}

json level_stats_json(const LevelStats &s) {
    json ratios = json::array();
    for (int mu = 0; mu < 4; ++mu) {
        json row = json::array();
        for (int nu = 0; nu < 4; ++nu) {
            row.push_back(ratio_json(s.ratio_ptm[mu][nu]));
        }
        ratios.push_back(row);
    }
    return {{"level", s.level},
            {"samples", s.samples},
            {"F_avg_strict", s.strict_avg_fidelity},
            {"F_bar", s.sample_mean_fidelity},
            {"dF", s.sd_fidelity},
            {"R_F", ratio_json(s.ratio_fidelity)},
            {"F_min", s.fidelity_min},
            {"F_max", s.fidelity_max},
            {"error_rate", s.error_rate()},
            {"strict_avg_ptm", matrix_json(s.strict_avg_ptm.matrix())},
            {"sample_mean_ptm", matrix_json(s.sample_mean_ptm.matrix())},
            {"sd_ptm", matrix_json(s.sd_ptm)},
            {"R_ptm", ratios}};
}

json attenuation_json(const AttenuationReport &r) {
    json rows = json::array();
    for (const auto &row : r.rows) {
        rows.push_back({{"level", row.level},
                        {"R_F", ratio_json(row.ratio_fidelity)},
                        {"min_diagonal", ratio_json(row.min_diagonal)},
                        {"max_diagonal", ratio_json(row.max_diagonal)},
                        {"min_off_diagonal", ratio_json(row.min_off_diagonal)},
                        {"off_diagonal_speedup", ratio_json(row.off_diagonal_speedup)},
                        {"absent_off_diagonal", row.absent_off_diagonal}});
    }
    return {{"rows", rows}, {"fidelity_diagonal_correlation", ratio_json(r.fidelity_diagonal_correlation)}};
}

json oscillation_json(const OscillationReport &r) {
    json levels = json::array();
    for (const auto &l : r.levels) {
        levels.push_back({{"level", l.level},
                          {"eta11", l.eta11},
                          {"eta33", l.eta33},
                          {"form", pauli_form_name(l.form)},
                          {"distance_x", l.distance_x},
                          {"distance_z", l.distance_z}});
    }
    return {{"levels", levels}, {"degenerate", r.degenerate}, {"alternates", r.alternates}};
}

json recursion_json(const AverageRecursionResult &r) {
    json levels = json::array();
    for (size_t l = 0; l < r.ptms.size(); ++l) {
        levels.push_back({{"level", l}, {"fidelity", r.fidelities[l]}, {"ptm", to_json(r.ptms[l])}});
    }
    return {{"levels", levels}};
}

void write_text_file(const std::filesystem::path &path, const std::string &text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out || !(out << text) || !out.flush()) {
        throw Error(ErrorKind::kIo, "cannot write " + path.string());
    }
}

void write_outputs(const MonteCarloResult &result, const std::filesystem::path &dir) {
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) {
        throw Error(ErrorKind::kIo, "cannot create " + dir.string() + ": " + ec.message());
    }
    json files = json::array();
    auto emit = [&](const std::string &name, const std::string &text) {
        write_text_file(dir / name, text);
        files.push_back(name);
    };
    emit("level_stats.csv", level_stats_csv(result.levels));
    for (const auto &s : result.levels) {
        const std::string l = std::to_string(s.level);
        emit("qpm_avg_l" + l + ".csv", ptm_csv(s.sample_mean_ptm.matrix()));
        emit("qpm_sd_l" + l + ".csv", ptm_csv(s.sd_ptm));
        emit("qpm_strict_l" + l + ".csv", ptm_csv(s.strict_avg_ptm.matrix()));
        emit("fidelity_hist_l" + l + ".csv", histogram_csv(s.histogram));
    }
    json manifest = {{"config", config_to_json(result.config)},
                     {"seed", result.config.seed},
                     {"versions",
                      {{"qecfluct", kVersion},
                       {"compiler", __VERSION__},
                       {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) +
                                     "." + std::to_string(EIGEN_MINOR_VERSION)}}},
                     {"workers", resolve_workers(result.config.workers)},
                     {"wall_seconds", result.wall_seconds},
                     {"files", files}};
    write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

}  // namespace qecfluct
