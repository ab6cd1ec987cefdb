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

#include "qecfluct/experiment.h"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <exception>
#include <mutex>
#include <thread>

namespace qecfluct {

namespace {

std::int64_t int_pow(std::int64_t base, int exp) {
    std::int64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        r *= base;
    }
    return r;
}

}  // namespace

void validate(const ExperimentConfig &cfg, int code_n) {
    if (cfg.levels < 1) {
        throw Error(ErrorKind::kInvalidArgument, "levels must be at least 1");
    }
    if (cfg.histogram_bins < 1) {
        throw Error(ErrorKind::kInvalidArgument, "histogram_bins must be at least 1");
    }
    if (cfg.levels > 12 || int_pow(code_n, cfg.levels) > (std::int64_t{1} << 40)) {
        throw Error(ErrorKind::kInvalidArgument, "too many levels");
    }
    const std::int64_t block = int_pow(code_n, cfg.levels);
    if (cfg.n0 <= 0 || cfg.n0 % block != 0) {
        throw Error(ErrorKind::kInvalidArgument, "n0 = " + std::to_string(cfg.n0) + " is not a positive multiple of " +
                                                     std::to_string(code_n) + "^" + std::to_string(cfg.levels));
    }
    validate(cfg.noise());
}

Ratio attenuation_ratio(double previous, double current) {
    if (std::abs(current) < kRatioFloor) {
        return std::nullopt;
    }
    return previous / current;
}

double Histogram::bin_low(size_t i) const {
    return low + (high - low) * static_cast<double>(i) / static_cast<double>(counts.size());
}

double Histogram::bin_high(size_t i) const {
    return i + 1 == counts.size() ? high : bin_low(i + 1);
}

Histogram make_histogram(std::span<const double> values, int bins) {
    if (bins < 1) {
        throw Error(ErrorKind::kInvalidArgument, "histogram needs at least one bin");
    }
    Histogram h;
    h.counts.assign(static_cast<size_t>(bins), 0);
    if (values.empty()) {
        return h;
    }
    const auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    h.low = *lo;
    h.high = *hi;
    const double width = (h.high - h.low) / bins;
    for (double v : values) {
        size_t index = 0;
        if (width > 0.0) {
            index = static_cast<size_t>(std::clamp(std::floor((v - h.low) / width), 0.0, bins - 1.0));
        }
        ++h.counts[index];
    }
    return h;
}

LevelStats level_statistics(int level, std::span<const PauliTransferMatrix> channels,
                            const PauliTransferMatrix &strict_avg, int bins) {
    if (channels.empty()) {
        throw Error(ErrorKind::kInvalidArgument, "no channels at level " + std::to_string(level));
    }
    LevelStats s;
    s.level = level;
    s.samples = static_cast<std::int64_t>(channels.size());
    s.strict_avg_ptm = strict_avg;
    s.strict_avg_fidelity = channel_fidelity(strict_avg);

    const double n = static_cast<double>(channels.size());
    std::vector<double> fidelity(channels.size());
    Eigen::Matrix4d sum = Eigen::Matrix4d::Zero();
    Eigen::Matrix4d sq = Eigen::Matrix4d::Zero();
    double f_sum = 0.0, f_sq = 0.0;
    for (size_t i = 0; i < channels.size(); ++i) {
        const Eigen::Matrix4d &m = channels[i].matrix();
        fidelity[i] = channel_fidelity(channels[i]);
        sum += m;
        sq += (m - strict_avg.matrix()).cwiseAbs2();
        f_sum += fidelity[i];
        f_sq += (fidelity[i] - s.strict_avg_fidelity) * (fidelity[i] - s.strict_avg_fidelity);
    }
    s.sample_mean_ptm = PauliTransferMatrix(sum / n);
    s.sample_mean_fidelity = f_sum / n;
    s.sd_ptm = (sq / n).cwiseSqrt();
    s.sd_fidelity = std::sqrt(f_sq / n);
    s.histogram = make_histogram(fidelity, bins);
    s.fidelity_min = s.histogram.low;
    s.fidelity_max = s.histogram.high;
    return s;
}

void attach_ratios(const LevelStats &previous, LevelStats &current) {
    current.ratio_fidelity = attenuation_ratio(previous.sd_fidelity, current.sd_fidelity);
    for (int mu = 0; mu < 4; ++mu) {
        for (int nu = 0; nu < 4; ++nu) {
            current.ratio_ptm[mu][nu] = attenuation_ratio(previous.sd_ptm(mu, nu), current.sd_ptm(mu, nu));
        }
    }
}

int resolve_workers(int requested) {
    if (requested > 0) {
        return requested;
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::int64_t count, int workers, const std::function<void(std::int64_t)> &body) {
    workers = static_cast<int>(std::min<std::int64_t>(resolve_workers(workers), std::max<std::int64_t>(count, 1)));
    if (workers == 1) {
        for (std::int64_t i = 0; i < count; ++i) {
            body(i);
        }
        return;
    }
    constexpr std::int64_t kChunk = 16;
    std::atomic<std::int64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto run = [&]() {
        while (true) {
            const std::int64_t begin = next.fetch_add(kChunk);
            if (begin >= count) {
                return;
            }
            const std::int64_t end = std::min(count, begin + kChunk);
            try {
                for (std::int64_t i = begin; i < end; ++i) {
                    body(i);
                }
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
                next.store(count);
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back(run);
    }
    for (auto &t : pool) {
        t.join();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
}

std::int64_t desk_default_n0(const CodeSpec &code, int levels) {
    std::int64_t target = 10000;
    if (code.name == "five") {
        target = 12500;
    } else if (code.name == "steane") {
        target = 9800;
    } else if (code.name == "shor") {
        target = 7290;
    }
    const std::int64_t block = int_pow(code.n, levels);
    return (target + block - 1) / block * block;
}

MonteCarloResult run_montecarlo(const ExperimentConfig &cfg) {
    const CodeSpec code = code_by_name(cfg.code);
    const EffectiveChannelEngine engine(code);
    return run_montecarlo(cfg, code, engine);
}

MonteCarloResult run_montecarlo(const ExperimentConfig &cfg, const CodeSpec &code,
                                const EffectiveChannelEngine &engine) {
    const auto start = std::chrono::steady_clock::now();
    validate(cfg, code.n);
    const PerturbedModelSpec noise = cfg.noise();
    const PauliTransferMatrix base = base_ptm(noise.base);
    const AverageRecursionResult strict = average_recursion(engine, average_perturbed(noise), cfg.levels);

    std::vector<PauliTransferMatrix> current(static_cast<size_t>(cfg.n0));
    parallel_for(cfg.n0, cfg.workers, [&](std::int64_t i) {
        RandomStream rng(cfg.seed, static_cast<std::uint64_t>(i));
        PauliTransferMatrix p = perturbed_channel(base, cfg.k, sample_unitary(rng));
        if (min_choi_eigenvalue(p) < -kPsdTol) {
            throw Error(ErrorKind::kNotCptp, "sample " + std::to_string(i) + " is not CPTP");
        }
        current[static_cast<size_t>(i)] = p;
    });

    MonteCarloResult result;
    result.config = cfg;
    result.levels.push_back(level_statistics(0, current, strict.ptms[0], cfg.histogram_bins));
    const size_t n = static_cast<size_t>(code.n);
    for (int l = 1; l <= cfg.levels; ++l) {
        std::vector<PauliTransferMatrix> next(current.size() / n);
        parallel_for(static_cast<std::int64_t>(next.size()), cfg.workers, [&](std::int64_t b) {
            next[static_cast<size_t>(b)] =
                engine.evaluate(std::span<const PauliTransferMatrix>(current.data() + b * n, n));
        });
        current = std::move(next);
        LevelStats stats = level_statistics(l, current, strict.ptms[l], cfg.histogram_bins);
        attach_ratios(result.levels.back(), stats);
        result.levels.push_back(std::move(stats));
    }
    result.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

double rough_fit_ratio(double fidelity) {
    if (!(fidelity < 1.0)) {
        throw Error(ErrorKind::kDomain, "rough estimate needs F < 1");
    }
    return 0.861795 + 0.300709 / std::sqrt(1.0 - fidelity);
}

RoughEstimate rough_estimate_sd(double k, std::span<const double> fidelities) {
    RoughEstimate e;
    e.sd.push_back(0.354143 * k - 0.0112724 * k * k);
    e.ratio.push_back(0.0);
    for (size_t l = 1; l < fidelities.size(); ++l) {
        const double r = rough_fit_ratio(fidelities[l]);
        e.ratio.push_back(r);
        e.sd.push_back(e.sd.back() / r);
    }
    return e;
}

AttenuationReport attenuation_report(std::span<const LevelStats> stats) {
    if (stats.size() < 2) {
        throw Error(ErrorKind::kInvalidArgument, "attenuation needs at least two levels");
    }
    AttenuationReport report;
    std::vector<double> rf, rdiag;
    for (size_t i = 1; i < stats.size(); ++i) {
        AttenuationRow row;
        row.level = stats[i].level;
        row.ratio_fidelity = attenuation_ratio(stats[i - 1].sd_fidelity, stats[i].sd_fidelity);
        double diag_sum = 0.0;
        int diag_count = 0;
        for (int mu = 0; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                const Ratio r = attenuation_ratio(stats[i - 1].sd_ptm(mu, nu), stats[i].sd_ptm(mu, nu));
                row.ratio_ptm[mu][nu] = r;
                if (mu == 0 || nu == 0) {
                    continue;
                }
                if (mu == nu) {
                    if (r) {
                        row.min_diagonal = row.min_diagonal ? std::min(*row.min_diagonal, *r) : *r;
                        row.max_diagonal = row.max_diagonal ? std::max(*row.max_diagonal, *r) : *r;
                        diag_sum += *r;
                        ++diag_count;
                    }
                } else if (r) {
                    row.min_off_diagonal = row.min_off_diagonal ? std::min(*row.min_off_diagonal, *r) : *r;
                } else {
                    ++row.absent_off_diagonal;
                }
            }
        }
        if (row.min_off_diagonal && row.max_diagonal) {
            row.off_diagonal_speedup = *row.min_off_diagonal / *row.max_diagonal;
        }
        if (row.ratio_fidelity && diag_count > 0) {
            rf.push_back(*row.ratio_fidelity);
            rdiag.push_back(diag_sum / diag_count);
        }
        report.rows.push_back(row);
    }
    if (rf.size() >= 3) {
        const double n = static_cast<double>(rf.size());
        double mx = 0, my = 0;
        for (size_t i = 0; i < rf.size(); ++i) {
            mx += rf[i] / n;
            my += rdiag[i] / n;
        }
        double sxy = 0, sxx = 0, syy = 0;
        for (size_t i = 0; i < rf.size(); ++i) {
            sxy += (rf[i] - mx) * (rdiag[i] - my);
            sxx += (rf[i] - mx) * (rf[i] - mx);
            syy += (rdiag[i] - my) * (rdiag[i] - my);
        }
        if (sxx > 0 && syy > 0) {
            report.fidelity_diagonal_correlation = sxy / std::sqrt(sxx * syy);
        }
    }
    return report;
}

ThresholdResult threshold_search(const CodeSpec &code, const EffectiveChannelEngine &engine,
                                 const BaseModelSpec &base, double k, const ThresholdOptions &options) {
    if (base.kind == BaseKind::kFixture) {
        throw Error(ErrorKind::kInvalidArgument, "fixture bases have a fixed fidelity");
    }
    validate(PerturbedModelSpec{BaseModelSpec{base.kind, 1.0, base.fixture, base.seed}, k, false});
    auto base_at = [&](double f0) {
        BaseModelSpec b = base;
        b.f = std::clamp((f0 - 0.5 * k) / (1.0 - k), 0.0, 1.0);
        return b;
    };
    auto gap = [&](double f0) {
        const auto r = average_recursion(engine, average_perturbed(PerturbedModelSpec{base_at(f0), k, false}), 1);
        return r.fidelities[1] - r.fidelities[0];
    };
    double lo = options.bracket_low;
    double hi = std::min(options.bracket_high, 1.0 - 0.5 * k);
    double g_lo = gap(lo), g_hi = gap(hi);
    if (g_lo * g_hi > 0.0) {
        throw Error(ErrorKind::kNoThreshold, "no sign change of F1 - F0 on [" + std::to_string(lo) + ", " +
                                                 std::to_string(hi) + "]");
    }
    ThresholdResult result;
    double mid = 0.5 * (lo + hi), g_mid = gap(mid);
    for (result.iterations = 1; result.iterations < options.max_iterations && std::abs(g_mid) >= options.tolerance;
         ++result.iterations) {
        if ((g_mid < 0.0) == (g_lo < 0.0)) {
            lo = mid;
            g_lo = g_mid;
        } else {
            hi = mid;
        }
        mid = 0.5 * (lo + hi);
        g_mid = gap(mid);
    }
    if (std::abs(g_mid) >= options.tolerance) {
        throw Error(ErrorKind::kNoThreshold, "bisection did not reach the tolerance");
    }
    result.threshold_fidelity = mid;
    result.residual = g_mid;
    result.base_f = base_at(mid).f;
    if (!options.strict_only) {
        ExperimentConfig cfg;
        cfg.code = code.name;
        cfg.base = base_at(mid);
        cfg.k = k;
        cfg.levels = options.levels;
        cfg.n0 = options.n0 > 0 ? options.n0 : desk_default_n0(code, options.levels);
        cfg.seed = options.seed;
        cfg.workers = options.workers;
        result.stats = run_montecarlo(cfg, code, engine).levels;
    }
    return result;
}

std::string_view pauli_form_name(PauliForm form) {
    switch (form) {
        case PauliForm::kX:
            return "X";
        case PauliForm::kZ:
            return "Z";
        case PauliForm::kTie:
            break;
    }
    return "tie";
}

OscillationReport shor_oscillation_report(std::span<const PauliTransferMatrix> ptms, double tie_tol) {
    OscillationReport report;
    for (size_t l = 1; l < ptms.size(); ++l) {
        const Eigen::Matrix4d &m = ptms[l].matrix();
        OscillationLevel level;
        level.level = static_cast<int>(l);
        level.eta11 = m(1, 1);
        level.eta33 = m(3, 3);
        if (std::abs(level.eta11 - level.eta33) <= tie_tol) {
            level.form = PauliForm::kTie;
            report.degenerate = true;
        } else {
            level.form = level.eta11 > level.eta33 ? PauliForm::kX : PauliForm::kZ;
        }
        double off = 0.0;
        for (int mu = 1; mu < 4; ++mu) {
            for (int nu = 0; nu < 4; ++nu) {
                if (mu != nu) {
                    off = std::max(off, std::abs(m(mu, nu)));
                }
            }
        }
        level.distance_x = std::max({std::abs(1.0 - m(1, 1)), std::abs(m(2, 2) - m(3, 3)), off});
        level.distance_z = std::max({std::abs(1.0 - m(3, 3)), std::abs(m(1, 1) - m(2, 2)), off});
        report.levels.push_back(level);
    }
    report.alternates = !report.degenerate && report.levels.size() >= 2;
    for (size_t i = 1; i < report.levels.size() && report.alternates; ++i) {
        report.alternates = report.levels[i].form != report.levels[i - 1].form;
    }
    return report;
}

OscillationReport shor_oscillation_report(std::span<const LevelStats> stats, double tie_tol) {
    std::vector<PauliTransferMatrix> means;
    for (const auto &s : stats) {
        means.push_back(s.sample_mean_ptm);
    }
    return shor_oscillation_report(means, tie_tol);
}

}  // namespace qecfluct
