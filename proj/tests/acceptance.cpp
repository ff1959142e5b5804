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

// Acceptance driver: `acceptance <criterion>` prints one PASS/FAIL line and
// exits non-zero on failure.

#include <fmt/core.h>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "bssc/bssc.hpp"
#include "oracles.hpp"

using namespace bssc;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Runs body(i) for i in [0, n) on all cores; returns the number of true results.
std::uint64_t parallel_count(std::uint64_t n, const std::function<bool(std::uint64_t)>& body) {
    std::atomic<std::uint64_t> next{0}, hits{0};
    const unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    {
        std::vector<std::jthread> pool;
        for (unsigned k = 0; k < threads; ++k)
            pool.emplace_back([&] {
                std::uint64_t local = 0;
                for (std::uint64_t i; (i = next.fetch_add(1024)) < n;)
                    for (std::uint64_t j = i; j < std::min(n, i + 1024); ++j) local += body(j) ? 1 : 0;
                hits += local;
            });
    }
    return hits;
}

CVec mix(const std::vector<CVec>& ws, const std::vector<cd>& h) {
    CVec s(ws[0].size());
    for (std::size_t l = 0; l < ws.size(); ++l)
        for (std::size_t i = 0; i < s.size(); ++i) s[i] += h[l] * ws[l][i];
    return s;
}

// ---- 1 ---------------------------------------------------------------------

Verdict cardinality() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string d;
    const std::map<int, std::uint64_t> want{{2, 60}, {3, 1080}, {4, 36720}};
    const std::map<int, std::uint64_t> want_bc{{2, 32}, {3, 512}, {4, 16384}};
    for (int m = 2; m <= 4; ++m) {
        std::uint64_t all = 0, bc = 0;
        for (const BsscParams& p : enumerate_codebook(m)) {
            ++all;
            bc += p.r() == m ? 1 : 0;
        }
        ok = ok && all == want.at(m) && bc == want_bc.at(m) && bc == (std::uint64_t{1} << (m * (m + 3) / 2)) &&
             all == codebook_size(m) && bc == bc_size(m);
        d += fmt::format("m={}: {} codewords, {} BC; ", m, all, bc);
    }
    // ratios from label enumeration, times 2^m codewords per label
    double prev = 0, r5 = 0;
    for (int m = 1; m <= 5; ++m) {
        std::uint64_t labels = 0, bc_labels = 0;
        for (const CosetLabel& l : enumerate_cosets(m)) {
            ++labels;
            bc_labels += l.r == m ? 1 : 0;
        }
        const double ratio = static_cast<double>(labels) / static_cast<double>(bc_labels);
        ok = ok && ratio > prev && (labels << m) == codebook_size(m);
        prev = ratio;
        if (m == 5) r5 = ratio;
    }
    for (int m = 6; m <= 9; ++m) {
        const double ratio = static_cast<double>(codebook_size(m)) / static_cast<double>(bc_size(m));
        ok = ok && ratio > prev && ratio < 2.39;
        prev = ratio;
    }
    const double secs = seconds_since(t0);
    ok = ok && r5 >= 2.30 && r5 <= 2.32 && secs < 1.0;
    return {ok, d + fmt::format("ratio(5) = {:.4f}, ratio(9) = {:.4f}, {:.3f} s", r5, prev, secs)};
}

// ---- 2 ---------------------------------------------------------------------

Verdict coherence() {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string d;
    for (int m = 2; m <= 3; ++m) {
        std::vector<Codeword> book;
        for (const BsscParams& p : enumerate_codebook(m)) book.push_back(synthesize(p));
        std::uint64_t pairs = 0;
        DyadicRational worst{0, 0};
        for (std::size_t i = 0; i < book.size(); ++i)
            for (std::size_t j = i + 1; j < book.size(); ++j) {
                worst = std::max(worst, inner(book[i], book[j]).abs2());
                ++pairs;
            }
        ok = ok && worst == DyadicRational{1, 1};
        d += fmt::format("m={}: {} pairs, max |ip|^2 = {}/2^{}; ", m, pairs, worst.num, worst.den_log2);
    }
    const double secs = seconds_since(t0);
    return {ok && secs < 30.0, d + fmt::format("{:.2f} s", secs)};
}

// ---- 3 ---------------------------------------------------------------------

/// Exact check that E = i^k D(a, b) maps w to +-w, using the codeword's
/// integer phases: (E w)(v + a) = i^k (-1)^{b.v} w(v).
std::optional<int> exact_eigen_sign(const Codeword& w, const PauliElement& e, int m) {
    const std::uint32_t n = 1u << m;
    std::vector<int> expo(n, -1);
    for (std::size_t j = 0; j < w.support.size(); ++j) expo[w.support[j]] = w.exponent(j);
    std::optional<int> sign;
    for (std::uint32_t v = 0; v < n; ++v) {
        const std::uint32_t u = v ^ e.a.word();
        if ((expo[v] < 0) != (expo[u] < 0)) return std::nullopt;
        if (expo[v] < 0) continue;
        const int got = (e.k + 2 * std::popcount(e.b.word() & v) + expo[v]) & 3;
        const int d = (got - expo[u]) & 3;
        if (d == 1 || d == 3 || (sign && *sign != d)) return std::nullopt;
        sign = d;
    }
    return sign;
}

Verdict stabilizer_fixed_points() {
    std::uint64_t codewords = 0, checks = 0, failures = 0;
    for (int m = 1; m <= 4; ++m)
        for (const CosetLabel& l : enumerate_cosets(m)) {
            const StabilizerGroup g = stabilizer_of_bssc(l);
            const auto elems = g.elements();
            if (elems.size() != (std::size_t{1} << m)) ++failures;
            for (std::uint32_t b = 0; b < (1u << m); ++b) {
                const Codeword w = synthesize(BsscParams(l, BitVec(m, b)));
                ++codewords;
                for (const PauliElement& e : elems) {
                    ++checks;
                    if (!exact_eigen_sign(w, e, m)) ++failures;
                }
            }
        }
    return {failures == 0, fmt::format("{} codewords, {} element checks, {} failures", codewords, checks, failures)};
}

Verdict stabilizer_off_diagonal() {
    std::uint64_t labels = 0, mismatches = 0, xparts_ok = 0, diag_ok = 0;
    std::string example;
    for (int m = 1; m <= 4; ++m)
        for (const CosetLabel& l : enumerate_cosets(m)) {
            ++labels;
            std::uint64_t off = 0;
            std::set<std::uint32_t> xs;
            for (const PauliElement& e : stabilizer_of_bssc(l).elements()) {
                off += e.is_diagonal() ? 0 : 1;
                xs.insert(e.a.word());
            }
            if (xs.size() == (std::size_t{1} << l.r)) ++xparts_ok;
            if ((std::uint64_t{1} << m) - off == (std::uint64_t{1} << (m - l.r))) ++diag_ok;
            if (off != (std::uint64_t{1} << l.r)) {
                if (example.empty()) example = fmt::format("m={} r={}: {} off-diagonal, expected {}", m, l.r, off, 1u << l.r);
                ++mismatches;
            }
        }
    return {mismatches == 0, fmt::format("{} of {} labels differ from 2^r off-diagonal elements (first: {}); "
                                         "diagonal elements equal 2^(m-r) for {} labels; distinct X-parts equal 2^r for {} labels",
                                         mismatches, labels, example.empty() ? "none" : example, diag_ok, xparts_ok)};
}

// ---- 4 ---------------------------------------------------------------------

Verdict clifford_consistency() {
    double worst = 0;
    std::uint64_t codewords = 0;
    for (int m = 1; m <= 4; ++m)
        for (const BsscParams& p : enumerate_codebook(m)) {
            const CVec a = synthesize(p).to_complex();
            const CVec b = synthesize_via_clifford(p);
            worst = std::max(worst, std::abs(std::abs(inner(std::span<const cd>(a), std::span<const cd>(b))) - 1.0));
            ++codewords;
        }
    // conjugation of each Pauli generator by the coset preimage, densely,
    // against the row action of the constructed representative
    std::uint64_t labels = 0, bad = 0;
    for (int m = 1; m <= 3; ++m)
        for (const CosetLabel& l : enumerate_cosets(m)) {
            ++labels;
            const SymplecticElement f = coset_rep(l);
            const Eigen::MatrixXcd g = dense(coset_preimage(l));
            bool ok = phi(coset_preimage(l)) == f;
            for (int i = 0; i < 2 * m; ++i) {
                const BitVec c = BitVec::unit(2 * m, i);
                const PauliElement e = PauliElement::e(c);
                const PauliElement t = PauliElement::e(f.act(c));
                const Eigen::MatrixXcd conj = g * oracle::pauli_dense(m, e.a.word(), e.b.word(), e.k) * g.adjoint();
                const Eigen::MatrixXcd target = oracle::pauli_dense(m, t.a.word(), t.b.word(), t.k);
                ok = ok && ((conj - target).norm() < 1e-9 || (conj + target).norm() < 1e-9);
            }
            // G_F carries the diagonal Paulis onto the stabilizer of the label
            const Eigen::MatrixXcd gf = dense(bssc_generator(l));
            std::set<std::pair<std::uint32_t, std::uint32_t>> stab;
            for (const PauliElement& s : stabilizer_of_bssc(l).elements()) stab.insert({s.a.word(), s.b.word()});
            for (int i = 0; i < m; ++i) {
                const Eigen::MatrixXcd conj = gf * oracle::pauli_dense(m, 0, 1u << (m - 1 - i)) * gf.adjoint();
                bool found = false;
                for (const auto& [a, b] : stab) {
                    const Eigen::MatrixXcd target = oracle::pauli_dense(m, a, b, std::popcount(a & b));
                    found = found || (conj - target).norm() < 1e-9 || (conj + target).norm() < 1e-9;
                }
                ok = ok && found;
            }
            bad += ok ? 0 : 1;
        }
    return {worst < 1e-12 && bad == 0,
            fmt::format("{} codewords, max ||<a,b>|-1| = {:.2e}; {} coset labels, {} inconsistent", codewords, worst, labels, bad)};
}

// ---- 5 ---------------------------------------------------------------------

Verdict noiseless_roundtrip() {
    std::string d;
    bool ok = true;
    double m5_secs = 0;
    for (int m = 1; m <= 5; ++m) {
        const auto t0 = Clock::now();
        const std::uint64_t n = codebook_size(m);
        const std::uint64_t good = parallel_count(n, [m](std::uint64_t id) {
            const BsscParams p = params_at(m, id);
            const CVec w = synthesize(p).to_complex();
            CounterRng rng(0x5ca1e, id);
            cd c = rng.complex_normal();
            if (std::abs(c) < 1e-3) c = 1.0;
            CVec cw(w);
            for (cd& z : cw) z *= c;
            try {
                return decode_noiseless(w) == p && decode_noiseless(cw) == p;
            } catch (const DecodeError&) {
                return false;
            }
        });
        const double secs = seconds_since(t0);
        if (m == 5) m5_secs = secs;
        ok = ok && good == n;
        d += fmt::format("m={}: {}/{}; ", m, good, n);
    }
    return {ok && m5_secs < 120.0, d + fmt::format("m=5 took {:.1f} s (plain and random-scaled)", m5_secs)};
}

// ---- 6 ---------------------------------------------------------------------

TrialConfig config(int m, int users, std::uint64_t trials, std::uint64_t seed, CodebookKind book, DecoderKind dec) {
    TrialConfig c;
    c.m = m;
    c.users = users;
    c.trials = trials;
    c.seed = seed;
    c.codebook = book;
    c.decoder = dec;
    return c;
}

Verdict single_user_m6() {
    const TrialStats st = run_trials(config(6, 1, 10000, 1, CodebookKind::bssc, DecoderKind::structured));
    return {st.per_user_errors == 0, fmt::format("{} errors in {} trials", st.per_user_errors, st.trials)};
}

Verdict planted_pairs() {
    double worst = 0;
    std::uint64_t cases = 0, missed = 0;
    CounterRng rng(606);
    auto check = [&](const BsscParams& p, const BsscParams& q, const std::vector<cd>& h) {
        ++cases;
        const MultiUserResult res = decode_multi(mix({synthesize(p).to_complex(), synthesize(q).to_complex()}, h), 2);
        for (std::size_t k = 0; k < 2; ++k) {
            const BsscParams& want = k == 0 ? p : q;
            const auto it = std::find(res.recovered.begin(), res.recovered.end(), want);
            if (it == res.recovered.end()) {
                ++missed;
                return;
            }
            worst = std::max(worst, std::abs(res.coefficients[static_cast<std::size_t>(it - res.recovered.begin())] - h[k]));
        }
    };
    for (int m = 4; m <= 6; ++m) {
        // orthogonal pairs, |h1| >> |h2|
        int found = 0;
        while (found < 100) {
            const BsscParams p = params_at(m, rng.below(codebook_size(m)));
            const BsscParams q = params_at(m, rng.below(codebook_size(m)));
            if (inner(synthesize(p), synthesize(q)).abs2() != DyadicRational{0, 0}) continue;
            ++found;
            const cd u1 = rng.complex_normal(), u2 = rng.complex_normal();
            check(p, q, {1.0, 0.1});
            check(p, q, {10.0 * u1 / std::abs(u1), 0.1 * u2 / std::abs(u2)});
        }
        // rank-1 pairs on disjoint support cosets, below the magnitude ratio
        // 1 + sqrt(2) another codeword can outscore both
        for (int t = 0; t < 100; ++t) {
            const BinarySubspace h = subspace_at(m, 1, rng.below(gaussian_binomial(m, 1)));
            const CosetLabel l(h, BitMat(1, 1));
            const auto tail = static_cast<std::uint32_t>(rng.below(1u << (m - 1)));
            const auto other = tail ^ (1u + static_cast<std::uint32_t>(rng.below((1u << (m - 1)) - 1)));
            const BsscParams p(l, BitVec::concat(BitVec(1, static_cast<std::uint32_t>(rng.below(2))), BitVec(m - 1, tail)));
            const BsscParams q(l, BitVec::concat(BitVec(1, static_cast<std::uint32_t>(rng.below(2))), BitVec(m - 1, other)));
            // dominant user: |h1| / |h2| in [3, 10], random phases
            const cd u1 = rng.complex_normal(), u2 = rng.complex_normal();
            const double ratio = 3.0 + 7.0 * rng.uniform();
            check(p, q, {ratio * u1 / std::abs(u1), u2 / std::abs(u2)});
        }
    }
    return {missed == 0 && worst < 1e-9, fmt::format("{} instances, {} misses, max coefficient error {:.2e}", cases, missed, worst)};
}

Verdict bssc_vs_bc() {
    const TrialStats a = run_trials(config(6, 2, 10000, 1, CodebookKind::bssc, DecoderKind::structured));
    const TrialStats b = run_trials(config(6, 2, 10000, 1, CodebookKind::bc, DecoderKind::exhaustive));
    const double excess = a.per_user_p - b.per_user_p;
    const double allowed = 2.0 * a.per_user_ci.half_width();
    return {excess <= allowed,
            fmt::format("BSSC structured per-user {} ({}/{}, CI [{:.5f}, {:.5f}]); BC exhaustive per-user {} ({}/{}, CI [{:.5f}, {:.5f}]); "
                        "excess {:.5f} vs allowed {:.5f}; per-trial {} vs {}",
                        a.per_user_p, a.per_user_errors, a.users_total, a.per_user_ci.lo, a.per_user_ci.hi, b.per_user_p,
                        b.per_user_errors, b.users_total, b.per_user_ci.lo, b.per_user_ci.hi, excess, allowed, a.per_trial_p,
                        b.per_trial_p)};
}

Verdict structured_vs_exhaustive() {
    const int m = 4;
    const std::uint64_t trials = 2000;
    const BsscSearch book(m);
    const std::uint64_t agree = parallel_count(trials, [&](std::uint64_t t) {
        CounterRng rng(404, t);
        std::vector<std::uint64_t> ids;
        while (ids.size() < 2) {
            const std::uint64_t id = rng.below(codebook_size(m));
            if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
        }
        const CVec s = mix({synthesize(params_at(m, ids[0])).to_complex(), synthesize(params_at(m, ids[1])).to_complex()},
                           {rng.complex_normal(), rng.complex_normal()});
        std::vector<std::uint64_t> a;
        for (const BsscParams& p : decode_multi(s, 2).recovered) a.push_back(codeword_id(p));
        std::vector<std::uint64_t> b = decode_multi_exhaustive(s, book, 2).ids;
        std::sort(a.begin(), a.end());
        std::sort(b.begin(), b.end());
        return a == b;
    });
    const double rate = static_cast<double>(agree) / static_cast<double>(trials);
    return {rate >= 0.95, fmt::format("{}/{} trials agree ({:.4f})", agree, trials, rate)};
}

// ---- 7 ---------------------------------------------------------------------

Verdict complexity_trend() {
    std::map<int, double> t;
    for (int m = 6; m <= 10; ++m) {
        const std::uint64_t size = codebook_size(std::min(m, 9));
        CounterRng rng(707, static_cast<std::uint64_t>(m));
        std::vector<CVec> signals;
        for (int k = 0; k < 8; ++k) {
            BsscParams p = m <= 9 ? params_at(m, rng.below(size))
                                  : BsscParams(coset_at(m, rng.below(coset_count(m))), BitVec(m, static_cast<std::uint32_t>(rng.below(1u << m))));
            CVec w = synthesize(p).to_complex();
            const cd h = rng.complex_normal();
            for (cd& z : w) z *= h;
            signals.push_back(std::move(w));
        }
        int reps = 0;
        const auto t0 = Clock::now();
        while (reps < 3 || seconds_since(t0) < 0.5) {
            const auto res = decode_multi(signals[static_cast<std::size_t>(reps) % signals.size()], 1);
            if (res.residual_norm > 1e-8) return {false, fmt::format("m={} decode failed", m)};
            ++reps;
        }
        t[m] = seconds_since(t0) / reps;
    }
    auto model = [](int m) { return std::ldexp(1.0, m) * m * m * m; };
    const double c = t[8] / model(8);
    bool ok = true;
    std::string d = fmt::format("c = {:.3e} s per N m^3;", c);
    for (const auto& [m, secs] : t) {
        const double ratio = secs / (c * model(m));
        ok = ok && ratio < 3.0 && ratio > 1.0 / 3.0;
        d += fmt::format(" m={}: {:.1f} us (x{:.2f})", m, secs * 1e6, ratio);
    }
    return {ok, d};
}

// ---- 8 ---------------------------------------------------------------------

Verdict determinism() {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / fmt::format("bssc_accept_{}", static_cast<long>(std::time(nullptr)));
    fs::create_directories(dir);
    const std::string flags = "simulate --m 5 --users 3 --trials 3000 --seed 8 --codebook bssc --decoder structured --noise 0.01";
    std::vector<std::string> outputs;
    for (int threads : {1, 4}) {
        const fs::path out = dir / fmt::format("run{}.csv", threads);
        const std::string cmd = fmt::format("BSSC_THREADS={} \"{}\" {} --out \"{}\"", threads, BSSC_CLI_PATH, flags, out.string());
        if (std::system(cmd.c_str()) != 0) return {false, "simulate failed: " + cmd};
        std::ifstream in(out, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        outputs.push_back(ss.str());
    }
    fs::remove_all(dir);
    const bool ok = outputs[0] == outputs[1] && outputs[0].size() > 0;
    return {ok, fmt::format("{} bytes, threads 1 vs 4 {}", outputs[0].size(), ok ? "identical" : "differ")};
}

}  // namespace

int main(int argc, char** argv) {
    const std::map<std::string, std::pair<std::string, std::function<Verdict()>>> criteria{
        {"1", {"codebook cardinality", cardinality}},
        {"2", {"exact coherence", coherence}},
        {"3a", {"stabilizer fixes every codeword up to sign", stabilizer_fixed_points}},
        {"3b", {"stabilizer has exactly 2^r off-diagonal elements", stabilizer_off_diagonal}},
        {"4", {"Clifford consistency", clifford_consistency}},
        {"5", {"noiseless single-user recovery", noiseless_roundtrip}},
        {"6a", {"L=1 decode_multi at m=6", single_user_m6}},
        {"6b", {"planted orthogonal and disjoint-support pairs", planted_pairs}},
        {"6c", {"structured BSSC vs exhaustive BC at m=6, L=2", bssc_vs_bc}},
        {"6d", {"structured vs exhaustive agreement at m=4, L=2", structured_vs_exhaustive}},
        {"7", {"complexity trend", complexity_trend}},
        {"8", {"determinism across thread counts", determinism}},
    };
    if (argc != 2 || !criteria.count(argv[1])) {
        std::fprintf(stderr, "usage: acceptance <1|2|3a|3b|4|5|6a|6b|6c|6d|7|8>\n");
        return 2;
    }
    const auto& [name, run] = criteria.at(argv[1]);
    const auto t0 = Clock::now();
    Verdict v{false, {}};
    try {
        v = run();
    } catch (const std::exception& e) {
        v = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] criterion %s (%s): %s [%.1f s]\n", v.pass ? "PASS" : "FAIL", argv[1], name.c_str(), v.detail.c_str(), seconds_since(t0));
    return v.pass ? 0 : 1;
}
