// Copyright 2026 The BSSC Authors
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

// Command-line driver: codebook export, encode, decode, simulate, sweep and
// selftest. Exit codes: 0 ok, 1 selftest failure, 2 configuration error,
// 3 decode failure, 4 input/output error.

#include <CLI11.hpp>
#include <fmt/format.h>
#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "bssc/bssc.hpp"

namespace {

using namespace bssc;
using json = nlohmann::json;

constexpr int kExitSelftest = 1;
constexpr int kExitConfig = 2;
constexpr int kExitDecode = 3;
constexpr int kExitIo = 4;

void emit(const std::optional<std::string>& out, const std::string& content) {
    if (out) {
        atomic_write(*out, content);
    } else {
        std::cout << content << std::flush;
    }
}

std::string svg_path(const std::string& out) {
    return std::filesystem::path(out).replace_extension(".svg").string();
}

std::vector<std::string> matrix_rows(const BitMat& a) {
    std::vector<std::string> rows;
    for (int i = 0; i < a.rows(); ++i) rows.push_back(a.row(i).to_string());
    return rows;
}

json params_json(const BsscParams& p, std::optional<std::uint64_t> id) {
    json j;
    if (id) j["id"] = *id;
    j["m"] = p.m();
    j["r"] = p.r();
    j["leading"] = p.label.sub.leading();
    j["H"] = matrix_rows(p.label.sub.basis());
    j["S_r"] = matrix_rows(p.label.s_r);
    j["b"] = p.b.to_string();
    return j;
}

std::optional<std::uint64_t> id_if_representable(const BsscParams& p) {
    try {
        return codeword_id(p);
    } catch (const ResourceError&) {
        return std::nullopt;
    }
}

CodebookKind kind_of(const std::string& s) { return parse_codebook_kind(s); }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Binary subspace chirp codebooks, decoders and random-access simulation"};
    app.require_subcommand(1);

    // codebook
    auto* cb = app.add_subcommand("codebook", "Export a codebook as CSV");
    int cb_m = 0;
    std::string cb_kind = "bssc";
    std::optional<std::string> cb_out;
    cb->add_option("--m", cb_m, "Number of qubits (N = 2^m)")->required()->check(CLI::Range(1, 8));
    cb->add_option("--kind", cb_kind, "bssc or bc")->check(CLI::IsMember({"bssc", "bc"}));
    cb->add_option("--out", cb_out, "Output file (default: stdout)");

    // encode
    auto* en = app.add_subcommand("encode", "Print codeword K as index,re,im lines");
    int en_m = 0;
    std::uint64_t en_id = 0;
    std::string en_kind = "bssc";
    std::uint64_t en_seed = 1;
    en->add_option("--m", en_m)->required()->check(CLI::Range(1, 16));
    en->add_option("--id", en_id)->required();
    en->add_option("--kind", en_kind, "bssc, bc or random")->check(CLI::IsMember({"bssc", "bc", "random"}));
    en->add_option("--seed", en_seed, "Simulation seed that fixes the random codebook");

    // decode
    auto* de = app.add_subcommand("decode", "Recover codeword parameters from a signal CSV");
    int de_m = 0;
    int de_users = 1;
    std::string de_in;
    bool de_robust = false;
    std::string de_kind = "bssc";
    de->add_option("--m", de_m)->required()->check(CLI::Range(1, 16));
    de->add_option("--in", de_in, "Signal file with index,re,im lines")->required();
    de->add_option("--users", de_users, "Number of superposed codewords")->check(CLI::PositiveNumber);
    de->add_option("--kind", de_kind, "Codebook searched by the greedy decoder: bssc or bc")
        ->check(CLI::IsMember({"bssc", "bc"}));
    de->add_flag("--robust", de_robust, "Use the greedy decoder even for a single user");

    // simulate
    auto* si = app.add_subcommand("simulate", "Run seeded random-access trials and write one stats row");
    TrialConfig cfg;
    std::string si_book = "bssc";
    std::string si_dec = "structured";
    std::string si_format = "csv";
    std::optional<std::string> si_out;
    std::optional<unsigned> si_threads;
    si->add_option("--m", cfg.m)->required()->check(CLI::Range(1, 9));
    si->add_option("--users", cfg.users)->required()->check(CLI::PositiveNumber);
    si->add_option("--trials", cfg.trials)->required()->check(CLI::PositiveNumber);
    si->add_option("--seed", cfg.seed)->required();
    si->add_option("--codebook", si_book)->check(CLI::IsMember({"bssc", "bc", "random"}));
    si->add_option("--decoder", si_dec)->check(CLI::IsMember({"structured", "exhaustive"}));
    si->add_option("--noise", cfg.noise_variance, "Noise variance per complex dimension")->check(CLI::NonNegativeNumber);
    si->add_option("--out", si_out, "Output CSV (default: stdout)");
    si->add_option("--format", si_format, "csv, or svg to also emit a chart")->check(CLI::IsMember({"csv", "svg"}));
    si->add_option("--threads", si_threads, "Worker threads (default: BSSC_THREADS or all cores)")
        ->check(CLI::PositiveNumber);
    si->add_flag("--timing", cfg.timing, "Report mean decode time (not reproducible)");

    // sweep
    auto* sw = app.add_subcommand("sweep", "Run a grid of configurations from a key = value spec file");
    std::string sw_spec;
    std::optional<std::string> sw_out;
    std::optional<std::string> sw_format;
    std::optional<unsigned> sw_threads;
    sw->add_option("--spec", sw_spec)->required();
    sw->add_option("--out", sw_out, "Output CSV (overrides the spec)");
    sw->add_option("--format", sw_format, "csv or svg")->check(CLI::IsMember({"csv", "svg"}));
    sw->add_option("--threads", sw_threads)->check(CLI::PositiveNumber);

    // selftest
    auto* st = app.add_subcommand("selftest", "Exhaustive invariant checks for small m");
    SelftestOptions st_opt;
    st->add_option("--max-m", st_opt.max_m)->check(CLI::Range(1, 3));
    st->add_flag("--corrupt-phase", st_opt.corrupt_phase, "Fault injection: perturb one phase per codeword");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*cb) {
            std::ostringstream os;
            write_codebook_csv(os, cb_m, kind_of(cb_kind));
            emit(cb_out, os.str());
        } else if (*en) {
            CVec v;
            switch (kind_of(en_kind)) {
                case CodebookKind::bssc:
                    if (en_id >= codebook_size(en_m)) throw ConfigError("id out of range");
                    v = synthesize(params_at(en_m, en_id)).to_complex();
                    break;
                case CodebookKind::bc:
                    if (en_id >= bc_size(en_m)) throw ConfigError("id out of range");
                    v = synthesize(bc_params_at(en_m, en_id)).to_complex();
                    break;
                default:
                    if (en_id >= codebook_size(en_m)) throw ConfigError("id out of range");
                    v = random_atom(en_m, random_codebook_seed(en_seed), en_id);
                    break;
            }
            std::cout << signal_csv(v);
        } else if (*de) {
            std::ifstream in(de_in);
            if (!in) throw IoError("cannot read " + de_in);
            const CVec s = read_signal_csv(in, de_m);
            const bool bc = de_kind == "bc";
            if (de_users == 1 && !de_robust) {
                const BsscParams p = decode_noiseless(s);
                if (bc && p.r() != de_m) throw DecodeError("signal is not a binary chirp");
                json j = params_json(p, bc ? std::optional(bc_id(p)) : id_if_representable(p));
                std::cout << j.dump() << '\n';
            } else {
                DecodeOptions opt;
                if (bc) opt.ranks = {de_m};
                const MultiUserResult res = decode_multi(s, de_users, opt);
                for (std::size_t k = 0; k < res.recovered.size(); ++k) {
                    const BsscParams& p = res.recovered[k];
                    json j = params_json(p, bc ? std::optional(bc_id(p)) : id_if_representable(p));
                    j["coefficient"] = {res.coefficients[k].real(), res.coefficients[k].imag()};
                    std::cout << j.dump() << '\n';
                }
            }
        } else if (*si) {
            cfg.codebook = kind_of(si_book);
            cfg.decoder = parse_decoder_kind(si_dec);
            validate(cfg);
            if (si_format == "svg" && !si_out) throw ConfigError("--format svg needs --out");
            const TrialStats stats = run_trials(cfg, si_threads.value_or(default_threads()));
            const std::vector<SweepRow> rows{{cfg, stats, {}}};
            std::ostringstream os;
            write_stats_csv(os, rows);
            emit(si_out, os.str());
            if (si_format == "svg") atomic_write(svg_path(*si_out), render_svg(rows));
        } else if (*sw) {
            std::ifstream in(sw_spec);
            if (!in) throw IoError("cannot read " + sw_spec);
            const SweepSpec spec = parse_sweep_spec(in);
            const std::optional<std::string> out = sw_out ? sw_out : spec.out;
            const std::string format = sw_format.value_or(spec.format.value_or("csv"));
            if (format != "csv" && format != "svg") throw ConfigError("format must be csv or svg");
            if (format == "svg" && !out) throw ConfigError("svg output needs an output path");
            const auto rows = sweep(spec.configs, sw_threads.value_or(default_threads()));
            std::ostringstream os;
            write_stats_csv(os, rows);
            emit(out, os.str());
            if (format == "svg") atomic_write(svg_path(*out), render_svg(rows));
            bool failed = false;
            for (const auto& r : rows)
                if (!r.stats) {
                    failed = true;
                    std::cerr << fmt::format("sweep row m={} L={} {}/{} failed: {}\n", r.config.m, r.config.users,
                                             to_string(r.config.codebook), to_string(r.config.decoder), r.error);
                }
            if (failed) return kExitConfig;
        } else if (*st) {
            const SelftestReport rep = run_selftest(st_opt);
            for (const auto& g : rep.groups)
                std::cout << fmt::format("{} {}: {}\n", g.passed ? "PASS" : "FAIL", g.name, g.detail);
            return rep.passed() ? 0 : kExitSelftest;
        }
    } catch (const DecodeError& e) {
        std::cerr << "decode failure: " << e.what() << '\n';
        return kExitDecode;
    } catch (const IoError& e) {
        std::cerr << "i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const std::invalid_argument& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::domain_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::length_error& e) {
        std::cerr << "configuration error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
