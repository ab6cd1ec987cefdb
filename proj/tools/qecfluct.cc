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

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "qecfluct/channel_io.h"
#include "qecfluct/codes.h"
#include "qecfluct/effective.h"
#include "qecfluct/experiment.h"
#include "qecfluct/experiment_io.h"
#include "qecfluct/noise.h"

using nlohmann::json;
using namespace qecfluct;

namespace {

json read_json(const std::string &path) {
    std::ifstream in(path);
    if (!in) {
        throw Error(ErrorKind::kIo, "cannot open " + path);
    }
    try {
        return json::parse(in);
    } catch (const json::exception &e) {
        throw Error(ErrorKind::kInvalidArgument, path + ": " + e.what());
    }
}

void emit(const std::string &path, const std::string &text) {
    if (path.empty() || path == "-") {
        std::cout << text;
    } else {
        write_text_file(path, text);
    }
}

struct BaseOptions {
    std::string kind = "depolarizing";
    double f = 1.0;
    std::string fixture;
    std::uint64_t seed = 0;

    void add(CLI::App *cmd) {
        cmd->add_option("--base", kind, "depolarizing | amplitude_damping | fixture | random_cptp");
        cmd->add_option("--f", f, "base channel fidelity");
        cmd->add_option("--fixture", fixture, "fixture name, for --base fixture");
        cmd->add_option("--base-seed", seed, "seed of the random_cptp base");
    }
    BaseModelSpec spec() const {
        BaseModelSpec b;
        b.kind = parse_base_kind(kind);
        b.f = f;
        b.fixture = fixture;
        b.seed = seed;
        if (b.kind == BaseKind::kFixture) {
            b.f = fixture_info(fixture).f;
        }
        return b;
    }
};

void print_summary(const std::vector<LevelStats> &levels) {
    std::printf("%5s %10s %14s %14s %12s %10s\n", "level", "samples", "F_avg_strict", "F_bar", "dF", "R_F");
    for (const auto &s : levels) {
        std::printf("%5d %10lld %14.9f %14.9f %12.5e %10s\n", s.level, static_cast<long long>(s.samples),
                    s.strict_avg_fidelity, s.sample_mean_fidelity, s.sd_fidelity,
                    s.ratio_fidelity ? std::to_string(*s.ratio_fidelity).c_str() : "-");
    }
}

std::vector<NaturalSuperOp> layer_from_json(const json &j) {
    const json &list = j.is_object() ? j.at("channels") : j;
    if (!list.is_array()) {
        throw Error(ErrorKind::kInvalidArgument, "layer must be a list of channels");
    }
    std::vector<NaturalSuperOp> out;
    for (const auto &c : list) {
        out.push_back(natural_from_json(c));
    }
    return out;
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Noise-fluctuation analysis of concatenated quantum error correction"};
    app.require_subcommand(1);

    // montecarlo
    auto *mc = app.add_subcommand("montecarlo", "Monte Carlo run from a JSON config");
    std::string mc_config, mc_out;
    int mc_workers = -1;
    mc->add_option("config", mc_config, "config file")->required()->check(CLI::ExistingFile);
    mc->add_option("--out", mc_out, "output directory (overrides out_dir)");
    mc->add_option("--workers", mc_workers, "worker threads (overrides config)");

    // average-recursion
    auto *ar = app.add_subcommand("average-recursion", "Strict average-channel recursion");
    std::string ar_code = "five", ar_format = "json", ar_out;
    double ar_k = 0.0;
    int ar_levels = 3;
    BaseOptions ar_base;
    ar->add_option("--code", ar_code, "five | steane | shor");
    ar_base.add(ar);
    ar->add_option("--k", ar_k, "mixing weight");
    ar->add_option("--levels", ar_levels, "concatenation levels");
    ar->add_option("--format", ar_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    ar->add_option("--out", ar_out, "output file");

    // threshold
    auto *th = app.add_subcommand("threshold", "Error-correction threshold and on-threshold attenuation");
    std::string th_code = "five";
    double th_k = 0.02;
    BaseOptions th_base;
    ThresholdOptions th_opts;
    th->add_option("--code", th_code, "five | steane | shor");
    th_base.add(th);
    th->add_option("--k", th_k, "mixing weight");
    th->add_option("--levels", th_opts.levels, "Monte Carlo levels");
    th->add_option("--n0", th_opts.n0, "Monte Carlo samples (0: desk default)");
    th->add_option("--seed", th_opts.seed, "Monte Carlo seed");
    th->add_option("--workers", th_opts.workers, "worker threads");
    th->add_option("--tolerance", th_opts.tolerance, "|F1 - F0| target");
    th->add_flag("--strict-only", th_opts.strict_only, "skip the Monte Carlo run");

    // effective
    auto *ef = app.add_subcommand("effective", "Effective channel of one layer");
    std::string ef_code = "five", ef_layer, ef_format = "json", ef_method = "engine", ef_out;
    ef->add_option("--code", ef_code, "five | steane | shor");
    ef->add_option("--layer", ef_layer, "JSON list of n channels")->required()->check(CLI::ExistingFile);
    ef->add_option("--method", ef_method, "engine | stepwise | oracle")
        ->check(CLI::IsMember({"engine", "stepwise", "oracle"}));
    ef->add_option("--format", ef_format, "json | csv")->check(CLI::IsMember({"json", "csv"}));
    ef->add_option("--out", ef_out, "output file");

    // codes
    auto *codes = app.add_subcommand("codes", "Code tables");
    codes->require_subcommand(1);
    auto *codes_export = codes->add_subcommand("export", "Write the error table and encoding unitary");
    std::string cx_code = "five", cx_out = ".";
    codes_export->add_option("--code", cx_code, "five | steane | shor");
    codes_export->add_option("--out", cx_out, "output directory");
    auto *codes_check = codes->add_subcommand("validate", "Check code invariants");
    std::string cv_code = "five";
    codes_check->add_option("--code", cv_code, "five | steane | shor");

    // fixtures
    auto *fx = app.add_subcommand("fixtures", "Fixture channels");
    fx->require_subcommand(1);
    auto *fx_list = fx->add_subcommand("list", "List fixtures");

    // channel
    auto *ch = app.add_subcommand("channel", "Channel representations");
    ch->require_subcommand(1);
    auto *ch_convert = ch->add_subcommand("convert", "Convert between forms");
    std::string cc_in, cc_to = "ptm";
    ch_convert->add_option("input", cc_in, "channel JSON")->required()->check(CLI::ExistingFile);
    ch_convert->add_option("--to", cc_to, "ptm | natural | choi | kraus")
        ->check(CLI::IsMember({"ptm", "natural", "choi", "kraus"}));

    // rough-estimate
    auto *re = app.add_subcommand("rough-estimate", "Fitted dF estimate for the 5-qubit code");
    double re_k = 0.02;
    int re_levels = 3;
    BaseOptions re_base;
    std::vector<double> re_fidelities;
    re->add_option("--k", re_k, "mixing weight");
    re->add_option("--levels", re_levels, "levels");
    re->add_option("--fidelities", re_fidelities, "F_avg(0..L) to use instead of the 5-qubit recursion");
    re_base.add(re);

    CLI11_PARSE(app, argc, argv);

    try {
        if (*mc) {
            ExperimentConfig cfg = load_config(mc_config);
            if (!mc_out.empty()) {
                cfg.out_dir = mc_out;
            }
            if (mc_workers >= 0) {
                cfg.workers = mc_workers;
            }
            if (cfg.out_dir.empty()) {
                throw Error(ErrorKind::kInvalidArgument, "no output directory; set out_dir or --out");
            }
            const MonteCarloResult result = run_montecarlo(cfg);
            write_outputs(result, cfg.out_dir);
            print_summary(result.levels);
            std::printf("wrote %s (%.2f s)\n", cfg.out_dir.c_str(), result.wall_seconds);
        } else if (*ar) {
            const CodeSpec code = code_by_name(ar_code);
            const PerturbedModelSpec spec{ar_base.spec(), ar_k, false};
            validate(spec);
            const auto r = average_recursion(code, average_perturbed(spec), ar_levels);
            if (ar_format == "json") {
                emit(ar_out, recursion_json(r).dump(2) + "\n");
            } else {
                std::string text = "level,fidelity";
                for (int mu = 0; mu < 4; ++mu) {
                    for (int nu = 0; nu < 4; ++nu) {
                        text += ",eta" + std::to_string(mu) + std::to_string(nu);
                    }
                }
                text += '\n';
                for (size_t l = 0; l < r.ptms.size(); ++l) {
                    text += std::to_string(l) + ',' + format_double(r.fidelities[l]);
                    for (int mu = 0; mu < 4; ++mu) {
                        for (int nu = 0; nu < 4; ++nu) {
                            text += ',' + format_double(r.ptms[l](mu, nu));
                        }
                    }
                    text += '\n';
                }
                emit(ar_out, text);
            }
        } else if (*th) {
            const CodeSpec code = code_by_name(th_code);
            const EffectiveChannelEngine engine(code);
            const ThresholdResult r = threshold_search(code, engine, th_base.spec(), th_k, th_opts);
            std::printf("threshold F_avg(0) = %.9f  (base f = %.9f, |F1 - F0| = %.2e, %d iterations)\n",
                        r.threshold_fidelity, r.base_f, std::abs(r.residual), r.iterations);
            if (!r.stats.empty()) {
                print_summary(r.stats);
            }
        } else if (*ef) {
            const CodeSpec code = code_by_name(ef_code);
            NoiseLayer layer{layer_from_json(read_json(ef_layer))};
            for (int slot : non_cptp_slots(layer)) {
                std::cerr << "warning: channel " << slot << " is not CPTP\n";
            }
            PauliTransferMatrix p;
            if (ef_method == "stepwise") {
                p = effective_ptm(code, layer);
            } else if (ef_method == "oracle") {
                p = effective_ptm_dense_oracle(code, layer);
            } else {
                p = EffectiveChannelEngine(code).evaluate(layer);
            }
            emit(ef_out, ef_format == "json" ? to_json(p).dump(2) + "\n" : ptm_csv(p.matrix()));
        } else if (*codes_export) {
            const CodeSpec code = code_by_name(cx_code);
            std::filesystem::create_directories(cx_out);
            std::string table = "index,error,weight,syndrome\n";
            for (size_t m = 0; m < code.errors.size(); ++m) {
                table += std::to_string(m) + ',' + code.errors[m].str() + ',' + std::to_string(code.errors[m].weight()) +
                         ',' + syndrome_bits(code.errors[m], code.stabilizers) + '\n';
            }
            const std::filesystem::path dir(cx_out);
            write_text_file(dir / (code.name + "_errors.csv"), table);
            json stab = json::array();
            for (const auto &g : code.stabilizers) {
                stab.push_back(g.str());
            }
            json u = unitary_to_json(code.encoding_unitary);
            u["code"] = code.name;
            u["stabilizers"] = stab;
            write_text_file(dir / (code.name + "_encoding.json"), u.dump() + "\n");
            std::printf("wrote %s_errors.csv and %s_encoding.json to %s\n", code.name.c_str(), code.name.c_str(),
                        cx_out.c_str());
        } else if (*codes_check) {
            const CodeReport r = validate_code(code_by_name(cv_code));
            std::printf("unitarity %.2e  orthogonality %.2e  stabilizers %.2e  single-qubit %.2e\n",
                        r.unitarity_residual, r.logical_orthogonality_residual, r.stabilizer_residual,
                        r.single_qubit_correction_residual);
            std::printf("error count %s  distinct syndromes %s  degenerate %s\n", r.error_count_ok ? "ok" : "bad",
                        r.syndromes_distinct ? "yes" : "no", r.degenerate ? "yes" : "no");
            return r.ok() ? 0 : 1;
        } else if (*fx_list) {
            std::printf("%-10s %8s %8s %10s\n", "name", "f", "k", "F_avg");
            for (const auto &f : fixture_catalog()) {
                std::printf("%-10s %8.4f %8.4f %10.4f\n", f.name.c_str(), f.f, f.k, f.average_fidelity);
            }
        } else if (*ch_convert) {
            std::cout << convert_channel_json(read_json(cc_in), cc_to).dump(2) << "\n";
        } else if (*re) {
            std::vector<double> fidelities = re_fidelities;
            if (fidelities.empty()) {
                const PerturbedModelSpec spec{re_base.spec(), re_k, false};
                validate(spec);
                fidelities = average_recursion(five_qubit_code(), average_perturbed(spec), re_levels).fidelities;
            }
            const RoughEstimate e = rough_estimate_sd(re_k, fidelities);
            std::printf("%5s %14s %12s %12s\n", "level", "F_avg", "R_fit", "dF_est");
            for (size_t l = 0; l < e.sd.size(); ++l) {
                std::printf("%5zu %14.9f %12s %12.5e\n", l, fidelities[l],
                            l == 0 ? "-" : std::to_string(e.ratio[l]).c_str(), e.sd[l]);
            }
        }
    } catch (const Error &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
