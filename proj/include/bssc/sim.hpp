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

#pragma once

// Seeded Monte-Carlo random-access trials: distinct active users, CN(0,1)
// fading, superposition, decoding, and error statistics.

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <exception>
#include <memory>
#include <mutex>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "bssc/codebook.hpp"
#include "bssc/decoder.hpp"
#include "bssc/errors.hpp"
#include "bssc/rng.hpp"
#include "bssc/search.hpp"
#include "bssc/types.hpp"

namespace bssc {

enum class DecoderKind { structured, exhaustive };

inline std::string_view to_string(DecoderKind k) { return k == DecoderKind::structured ? "structured" : "exhaustive"; }

inline DecoderKind parse_decoder_kind(std::string_view s) {
    if (s == "structured") return DecoderKind::structured;
    if (s == "exhaustive") return DecoderKind::exhaustive;
    throw ConfigError("unknown decoder kind '" + std::string(s) + "'");
}

struct TrialConfig {
    int m = 4;
    int users = 1;
    std::uint64_t trials = 1000;
    std::uint64_t seed = 1;
    CodebookKind codebook = CodebookKind::bssc;
    DecoderKind decoder = DecoderKind::structured;
    double noise_variance = 0.0;
    bool timing = false;  // report mean decode time (wall clock, not reproducible)
};

struct Interval {
    double lo = 0.0;
    double hi = 0.0;
    double half_width() const { return 0.5 * (hi - lo); }
};

inline constexpr double kZ95 = 1.959963984540054;

/// Wilson score interval for k successes out of n.
inline Interval wilson(std::uint64_t k, std::uint64_t n, double z = kZ95) {
    if (n == 0) return {0.0, 1.0};
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(k) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = (p + z2 / (2.0 * nn)) / denom;
    const double half = z / denom * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {k == 0 ? 0.0 : std::max(0.0, center - half), k == n ? 1.0 : std::min(1.0, center + half)};
}

struct TrialStats {
    std::uint64_t trials = 0;
    std::uint64_t users_total = 0;
    std::uint64_t per_user_errors = 0;
    std::uint64_t per_trial_errors = 0;
    double per_user_p = 0.0;
    double per_trial_p = 0.0;
    Interval per_user_ci;
    Interval per_trial_ci;
    std::optional<double> mean_decode_us;
};

/// Seed of the random codebook attached to a simulation seed.
inline std::uint64_t random_codebook_seed(std::uint64_t seed) { return splitmix64(seed ^ 0x72616e646f6d6362ULL); }

/// Codebook cardinality for a configuration; the random codebook matches
/// the subspace chirp codebook at the same m.
inline std::uint64_t config_codebook_size(const TrialConfig& cfg) {
    return cfg.codebook == CodebookKind::bc ? bc_size(cfg.m) : codebook_size(cfg.m);
}

inline void validate(const TrialConfig& cfg) {
    if (cfg.m < 1 || cfg.m > 9) throw ConfigError("m must be in [1, 9]");
    if (cfg.users < 1) throw ConfigError("users must be at least 1");
    if (cfg.trials < 1) throw ConfigError("trials must be at least 1");
    if (!(cfg.noise_variance >= 0.0) || !std::isfinite(cfg.noise_variance))
        throw ConfigError("noise variance must be finite and non-negative");
    if (cfg.codebook == CodebookKind::random && cfg.decoder == DecoderKind::structured)
        throw ConfigError("the random codebook has no structured decoder");
    if (static_cast<std::uint64_t>(cfg.users) > config_codebook_size(cfg))
        throw ConfigError("more users than codewords");
}

namespace detail {

/// Everything shared by the trials of one configuration.
class Experiment {
   public:
    explicit Experiment(const TrialConfig& cfg) : cfg_(cfg), size_(config_codebook_size(cfg)) {
        if (cfg.decoder == DecoderKind::exhaustive) {
            switch (cfg.codebook) {
                case CodebookKind::bssc: search_ = std::make_unique<BsscSearch>(cfg.m); break;
                case CodebookKind::bc: search_ = std::make_unique<ChirpSearch>(cfg.m); break;
                default: search_ = std::make_unique<RandomSearch>(cfg.m, size_, random_codebook_seed(cfg.seed)); break;
            }
        }
        if (cfg.codebook == CodebookKind::bc) options_.ranks = {cfg.m};
    }

    CVec atom(std::uint64_t id) const {
        switch (cfg_.codebook) {
            case CodebookKind::bssc: return synthesize(params_at(cfg_.m, id)).to_complex();
            case CodebookKind::bc: return synthesize(bc_params_at(cfg_.m, id)).to_complex();
            default: return random_atom(cfg_.m, random_codebook_seed(cfg_.seed), id);
        }
    }

    std::vector<std::uint64_t> decode(std::span<const cd> s) const {
        if (search_) return decode_multi_exhaustive(s, *search_, cfg_.users).ids;
        const MultiUserResult res = decode_multi(s, cfg_.users, options_);
        std::vector<std::uint64_t> ids;
        for (const BsscParams& p : res.recovered)
            ids.push_back(cfg_.codebook == CodebookKind::bc ? bc_id(p) : codeword_id(p));
        return ids;
    }

    struct Outcome {
        int misses = 0;
        double decode_us = 0.0;
    };

    Outcome run(std::uint64_t trial) const {
        CounterRng rng(cfg_.seed, trial);
        std::vector<std::uint64_t> active;
        while (active.size() < static_cast<std::size_t>(cfg_.users)) {
            const std::uint64_t id = rng.below(size_);
            if (std::find(active.begin(), active.end(), id) == active.end()) active.push_back(id);
        }
        CVec s(std::size_t{1} << cfg_.m);
        for (std::uint64_t id : active) {
            const cd h = rng.complex_normal();
            const CVec w = atom(id);
            for (std::size_t i = 0; i < s.size(); ++i) s[i] += h * w[i];
        }
        if (cfg_.noise_variance > 0.0)
            for (cd& z : s) z += rng.complex_normal(cfg_.noise_variance);

        const auto t0 = std::chrono::steady_clock::now();
        const std::vector<std::uint64_t> got = decode(s);
        const auto t1 = std::chrono::steady_clock::now();

        Outcome o;
        for (std::uint64_t id : active)
            if (std::find(got.begin(), got.end(), id) == got.end()) ++o.misses;
        o.decode_us = std::chrono::duration<double, std::micro>(t1 - t0).count();
        return o;
    }

   private:
    TrialConfig cfg_;
    std::uint64_t size_;
    std::unique_ptr<CodebookSearch> search_;
    DecodeOptions options_;
};

}  // namespace detail

/// Worker count: hardware concurrency, capped by BSSC_THREADS when set.
inline unsigned default_threads() {
    unsigned n = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("BSSC_THREADS")) {
        char* end = nullptr;
        const long cap = std::strtol(env, &end, 10);
        if (end != env && *end == '\0' && cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
    }
    return n;
}

inline TrialStats run_trials(const TrialConfig& cfg, unsigned threads = default_threads()) {
    validate(cfg);
    const detail::Experiment exp(cfg);
    std::vector<detail::Experiment::Outcome> out(cfg.trials);
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mu;
    auto worker = [&] {
        try {
            for (std::uint64_t t; (t = next.fetch_add(1)) < cfg.trials;) out[t] = exp.run(t);
        } catch (...) {
            const std::lock_guard lock(failure_mu);
            if (!failure) failure = std::current_exception();
            next = cfg.trials;
        }
    };
    threads = std::max(1u, static_cast<unsigned>(std::min<std::uint64_t>(threads, cfg.trials)));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k) pool.emplace_back(worker);
    }
    if (failure) std::rethrow_exception(failure);

    TrialStats st;
    st.trials = cfg.trials;
    st.users_total = cfg.trials * static_cast<std::uint64_t>(cfg.users);
    double total_us = 0.0;
    for (const auto& o : out) {
        st.per_user_errors += static_cast<std::uint64_t>(o.misses);
        st.per_trial_errors += o.misses > 0 ? 1 : 0;
        total_us += o.decode_us;
    }
    st.per_user_p = static_cast<double>(st.per_user_errors) / static_cast<double>(st.users_total);
    st.per_trial_p = static_cast<double>(st.per_trial_errors) / static_cast<double>(st.trials);
    st.per_user_ci = wilson(st.per_user_errors, st.users_total);
    st.per_trial_ci = wilson(st.per_trial_errors, st.trials);
    if (cfg.timing) st.mean_decode_us = total_us / static_cast<double>(cfg.trials);
    return st;
}

struct SweepRow {
    TrialConfig config;
    std::optional<TrialStats> stats;
    std::string error;  // set when the row failed
};

/// Runs every configuration; a failing row records its error and the sweep
/// moves on.
inline std::vector<SweepRow> sweep(const std::vector<TrialConfig>& cfgs, unsigned threads = default_threads()) {
    if (cfgs.empty()) throw ConfigError("empty sweep");
    std::vector<SweepRow> rows;
    for (const TrialConfig& cfg : cfgs) {
        SweepRow row{cfg, std::nullopt, {}};
        try {
            row.stats = run_trials(cfg, threads);
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

// ---- CSV -------------------------------------------------------------------

inline constexpr std::string_view kStatsCsvHeader =
    "m,L,codebook,decoder,noise_var,trials,per_user_err,per_trial_err,per_user_p,per_trial_p,ci_lo,ci_hi,"
    "mean_decode_us,seed";

/// RFC-4180 field quoting.
inline std::string csv_field(std::string_view v) {
    if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
    std::string out = "\"";
    for (char c : v) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + '"';
}

/// Shortest round-trip decimal; negative zero prints as 0.
inline std::string format_number(double x) { return fmt::format("{}", x == 0.0 ? 0.0 : x); }

/// One stats row; ci_lo/ci_hi bound per_user_p.
inline std::string stats_csv_row(const TrialConfig& cfg, const TrialStats& st) {
    std::vector<std::string> f{
        fmt::format("{}", cfg.m),
        fmt::format("{}", cfg.users),
        csv_field(to_string(cfg.codebook)),
        csv_field(to_string(cfg.decoder)),
        format_number(cfg.noise_variance),
        fmt::format("{}", st.trials),
        fmt::format("{}", st.per_user_errors),
        fmt::format("{}", st.per_trial_errors),
        format_number(st.per_user_p),
        format_number(st.per_trial_p),
        format_number(st.per_user_ci.lo),
        format_number(st.per_user_ci.hi),
        st.mean_decode_us ? format_number(*st.mean_decode_us) : std::string(),
        fmt::format("{}", cfg.seed),
    };
    std::string line;
    for (std::size_t k = 0; k < f.size(); ++k) line += (k ? "," : "") + f[k];
    return line + '\n';
}

inline void write_stats_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
    os << kStatsCsvHeader << '\n';
    for (const SweepRow& r : rows)
        if (r.stats) os << stats_csv_row(r.config, *r.stats);
}

}  // namespace bssc
