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

// Binary subspace chirp codewords: synthesis, exact arithmetic, and the
// deterministic codebook indexing id = coset_index * 2^m + int(b).

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "bssc/clifford.hpp"
#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"
#include "bssc/rng.hpp"
#include "bssc/symplectic.hpp"
#include "bssc/types.hpp"

namespace bssc {

enum class CodebookKind { bssc, bc, random };

inline std::string_view to_string(CodebookKind k) {
    switch (k) {
        case CodebookKind::bssc: return "bssc";
        case CodebookKind::bc: return "bc";
        default: return "random";
    }
}

inline CodebookKind parse_codebook_kind(std::string_view s) {
    if (s == "bssc") return CodebookKind::bssc;
    if (s == "bc") return CodebookKind::bc;
    if (s == "random") return CodebookKind::random;
    throw ConfigError("unknown codebook kind '" + std::string(s) + "'");
}

/// (H, S_r, b) naming one codeword.
struct BsscParams {
    CosetLabel label;
    BitVec b;

    BsscParams() = default;
    BsscParams(CosetLabel l, BitVec bits) : label(std::move(l)), b(bits) {
        if (b.size() != label.m()) throw DimensionError("b must have length m");
    }

    int m() const { return label.m(); }
    int r() const { return label.r; }
    /// First r coordinates of b.
    BitVec b_r() const { return b.head(label.r); }
    /// Last m - r coordinates of b.
    BitVec b_tail() const { return b.tail(m() - label.r); }

    friend bool operator==(const BsscParams& x, const BsscParams& y) { return x.label == y.label && x.b == y.b; }
};

/// Exact codeword: sign * 2^{-r/2} * i^{phase[k]} at ambient index support[k].
struct Codeword {
    int m = 0;
    int r = 0;
    std::vector<std::uint32_t> support;  // ascending
    std::vector<std::uint8_t> phase;     // x^T S_r x + 2 b_r^T x mod 4
    int global_sign = 1;                 // (-1)^{wt(b_{m-r})}

    double amplitude() const { return std::pow(2.0, -0.5 * r); }

    /// Total exponent of i at support[k], the sign folded in.
    int exponent(std::size_t k) const { return (phase[k] + (global_sign < 0 ? 2 : 0)) & 3; }

    CVec to_complex() const {
        CVec out(std::size_t{1} << m);
        const double amp = amplitude();
        for (std::size_t k = 0; k < support.size(); ++k) out[support[k]] = rotate_quarter(cd{amp, 0.0}, exponent(k));
        return out;
    }
};

/// Support index of coordinate vector x: I_{I~} b_{m-r} + H_I x.
class SupportMap {
   public:
    SupportMap(const BinarySubspace& h, const BitVec& b_tail) : basis_(h.basis()) {
        const auto& nl = h.non_leading();
        for (std::size_t k = 0; k < nl.size(); ++k)
            if (b_tail[static_cast<int>(k)]) base_ |= std::uint32_t{1} << (h.ambient() - 1 - nl[k]);
    }
    std::uint32_t operator()(std::uint32_t x) const { return base_ ^ basis_.apply_word(x); }

   private:
    BitMat basis_;
    std::uint32_t base_ = 0;
};

inline Codeword synthesize(const BsscParams& p) {
    const int r = p.r();
    Codeword w;
    w.m = p.m();
    w.r = r;
    w.global_sign = (p.b_tail().weight() & 1) ? -1 : 1;
    const SupportMap at(p.label.sub, p.b_tail());
    const QuadraticForm q(p.label.s_r);
    const std::uint32_t br = p.b_r().word();
    const std::size_t n = std::size_t{1} << r;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> entries(n);
    for (std::uint32_t x = 0; x < n; ++x)
        entries[x] = {at(x), static_cast<std::uint8_t>((q(x) + (parity(br & x) ? 2 : 0)) & 3)};
    std::sort(entries.begin(), entries.end());
    w.support.resize(n);
    w.phase.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
        w.support[k] = entries[k].first;
        w.phase[k] = entries[k].second;
    }
    return w;
}

/// Column b of G_D(P^T) G_U(S) G_Omega(r) Z(m,r), via structured application to e_b.
inline CVec synthesize_via_clifford(const BsscParams& p) {
    const CliffordOp g = bssc_generator(p.label) * CliffordOp::z(p.m(), p.r());
    CVec e(std::size_t{1} << p.m());
    e[p.b.word()] = 1.0;
    return bssc::apply(g, e);
}

// ---- codebook indexing ------------------------------------------------------

inline std::uint64_t codebook_size(int m) {
    const std::uint64_t c = coset_count(m);
    if (c > (UINT64_MAX >> m)) throw ResourceError("codebook size overflows 64 bits");
    return c << m;
}

/// Size of the binary chirp slice (r = m): 2^{m(m+3)/2}.
inline std::uint64_t bc_size(int m) {
    const int e = m * (m + 3) / 2;
    if (e >= 64) throw ResourceError("BC codebook size overflows 64 bits");
    return std::uint64_t{1} << e;
}

inline std::uint64_t codeword_id(const BsscParams& p) {
    const std::uint64_t c = coset_index(p.label);
    if (c > (UINT64_MAX >> p.m())) throw ResourceError("codeword id overflows 64 bits");
    return (c << p.m()) | p.b.word();
}

inline BsscParams params_at(int m, std::uint64_t id) {
    return BsscParams(coset_at(m, id >> m), BitVec(m, static_cast<std::uint32_t>(id & low_mask(m))));
}

inline auto enumerate_codebook(int m) {
    return IndexedRange(codebook_size(m), [m](std::uint64_t id) { return params_at(m, id); });
}

inline BinarySubspace full_space(int m) { return subspace_at(m, m, 0); }

/// Id within the binary chirp slice: S bits * 2^m + int(b).
inline std::uint64_t bc_id(const BsscParams& p) {
    if (p.r() != p.m()) throw DomainError("not a binary chirp (r < m)");
    return (symmetric_bits(p.label.s_r) << p.m()) | p.b.word();
}

inline BsscParams bc_params_at(int m, std::uint64_t id) {
    return BsscParams(CosetLabel(full_space(m), symmetric_from_bits(m, id >> m)),
                      BitVec(m, static_cast<std::uint32_t>(id & low_mask(m))));
}

// ---- exact inner products ---------------------------------------------------

/// num / 2^den_log2
struct DyadicRational {
    std::int64_t num = 0;
    int den_log2 = 0;

    double value() const { return std::ldexp(static_cast<double>(num), -den_log2); }

    friend std::strong_ordering operator<=>(const DyadicRational& x, const DyadicRational& y) {
        const int d = std::max(x.den_log2, y.den_log2);
        return (x.num << (d - x.den_log2)) <=> (y.num << (d - y.den_log2));
    }
    friend bool operator==(const DyadicRational& x, const DyadicRational& y) { return (x <=> y) == 0; }
};

/// (re + i im) / sqrt(2^scale_log2)
struct ExactInner {
    std::int64_t re = 0;
    std::int64_t im = 0;
    int scale_log2 = 0;

    DyadicRational abs2() const { return {re * re + im * im, scale_log2}; }
    cd value() const {
        const double s = std::pow(2.0, -0.5 * scale_log2);
        return {static_cast<double>(re) * s, static_cast<double>(im) * s};
    }
};

/// <c1, c2> = sum conj(c1) c2 over the common support, in Z[i].
inline ExactInner inner(const Codeword& c1, const Codeword& c2) {
    if (c1.m != c2.m) throw DimensionError("codewords differ in dimension");
    ExactInner out;
    out.scale_log2 = c1.r + c2.r;
    std::size_t i = 0;
    std::size_t j = 0;
    while (i < c1.support.size() && j < c2.support.size()) {
        if (c1.support[i] < c2.support[j]) {
            ++i;
        } else if (c2.support[j] < c1.support[i]) {
            ++j;
        } else {
            switch ((c2.exponent(j) - c1.exponent(i) + 4) & 3) {
                case 0: ++out.re; break;
                case 1: ++out.im; break;
                case 2: --out.re; break;
                default: --out.im; break;
            }
            ++i;
            ++j;
        }
    }
    return out;
}

// ---- baselines --------------------------------------------------------------

inline constexpr std::uint64_t kMaxMaterializedEntries = std::uint64_t{1} << 26;

inline std::vector<CVec> bc_codebook(int m) {
    const std::uint64_t size = bc_size(m);
    if (size > (kMaxMaterializedEntries >> m)) throw ResourceError("BC codebook too large to materialize");
    std::vector<CVec> out;
    out.reserve(size);
    for (std::uint64_t id = 0; id < size; ++id) out.push_back(synthesize(bc_params_at(m, id)).to_complex());
    return out;
}

/// Codeword `index` of the seeded random codebook: a unit-normalized complex
/// Gaussian vector drawn from the stream (seed, index).
inline CVec random_atom(int m, std::uint64_t seed, std::uint64_t index) {
    CounterRng rng(seed, index);
    CVec v(std::size_t{1} << m);
    for (cd& z : v) z = rng.complex_normal();
    const double s = 1.0 / std::sqrt(norm2(v));
    for (cd& z : v) z *= s;
    return v;
}

inline std::vector<CVec> random_codebook(int m, std::uint64_t size, std::uint64_t seed) {
    if (size > (kMaxMaterializedEntries >> m)) throw ResourceError("random codebook too large to materialize");
    std::vector<CVec> out;
    out.reserve(size);
    for (std::uint64_t k = 0; k < size; ++k) out.push_back(random_atom(m, seed, k));
    return out;
}

// ---- CSV export ------------------------------------------------------------

inline constexpr std::string_view kCodebookCsvHeader = "id,m,r,I_mask,H_free,S_r,b,support,phase";

inline std::string bits_to_string(std::uint64_t bits, int n) {
    std::string s(static_cast<std::size_t>(n), '0');
    for (int t = 0; t < n; ++t)
        if ((bits >> (n - 1 - t)) & 1u) s[static_cast<std::size_t>(t)] = '1';
    return s;
}

/// One CSV row. I_mask marks leading positions; H_free lists the free echelon
/// entries in enumeration order; S_r is the packed upper triangle; support and
/// phase are ';'-separated, phase holding the total exponent of i.
inline void write_codebook_row(std::ostream& os, std::uint64_t id, const BsscParams& p) {
    const Codeword w = synthesize(p);
    std::string mask(static_cast<std::size_t>(p.m()), '0');
    for (int i : p.label.sub.leading()) mask[static_cast<std::size_t>(i)] = '1';
    os << id << ',' << p.m() << ',' << p.r() << ',' << mask << ','
       << bits_to_string(free_bits(p.label.sub), free_bit_count(p.label.sub)) << ','
       << bits_to_string(symmetric_bits(p.label.s_r), p.r() * (p.r() + 1) / 2) << ',' << p.b.to_string() << ',';
    for (std::size_t k = 0; k < w.support.size(); ++k) os << (k ? ";" : "") << w.support[k];
    os << ',';
    for (std::size_t k = 0; k < w.support.size(); ++k) os << (k ? ";" : "") << w.exponent(k);
    os << '\n';
}

inline void write_codebook_csv(std::ostream& os, int m, CodebookKind kind) {
    os << kCodebookCsvHeader << '\n';
    if (kind == CodebookKind::bssc) {
        const std::uint64_t n = codebook_size(m);
        for (std::uint64_t id = 0; id < n; ++id) write_codebook_row(os, id, params_at(m, id));
    } else if (kind == CodebookKind::bc) {
        const std::uint64_t n = bc_size(m);
        for (std::uint64_t id = 0; id < n; ++id) write_codebook_row(os, id, bc_params_at(m, id));
    } else {
        throw ConfigError("random codebooks have no algebraic export");
    }
}

}  // namespace bssc
