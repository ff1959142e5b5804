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

// Structured Clifford operators kept as products of primitive factors, each
// applied to a length-2^m vector in O(N) or O(N r).

#include <Eigen/Dense>

#include <cmath>
#include <cstdint>
#include <span>
#include <utility>
#include <variant>
#include <vector>

#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"
#include "bssc/pauli.hpp"
#include "bssc/symplectic.hpp"
#include "bssc/types.hpp"

namespace bssc {

namespace factor {

/// G_D(P): e_v -> e_{P^T v}
struct Perm {
    BitMat p;
};
/// G_U(S) = diag(i^{v^T S v mod 4}); conjugate flips every phase.
struct DiagQuartic {
    BitMat s;
    bool conjugate = false;
};
/// G_Omega(r) = H_2^{(x)r} (x) I_{2^{m-r}}
struct PartialHadamard {
    int r;
};
/// Z(m,r) = I_{2^r} (x) sigma_z^{(x)(m-r)}
struct ZPattern {
    int r;
};

}  // namespace factor

using CliffordFactor = std::variant<factor::Perm, factor::DiagQuartic, factor::PartialHadamard, factor::ZPattern>;

/// Product F_1 F_2 ... F_k of primitive factors; factors()[0] is leftmost.
/// Global phase is not tracked.
class CliffordOp {
   public:
    explicit CliffordOp(int m) : m_(m) {
        if (m < 1 || m > kMaxDim) throw DimensionError("m out of range");
    }
    CliffordOp(int m, std::vector<CliffordFactor> factors) : CliffordOp(m) {
        for (auto& f : factors) push_back(std::move(f));
    }

    static CliffordOp identity(int m) { return CliffordOp(m); }
    static CliffordOp g_d(const BitMat& p) { return CliffordOp(p.rows(), {factor::Perm{p}}); }
    static CliffordOp g_u(const BitMat& s) { return CliffordOp(s.rows(), {factor::DiagQuartic{s, false}}); }
    static CliffordOp g_omega(int m, int r) { return CliffordOp(m, {factor::PartialHadamard{r}}); }
    static CliffordOp z(int m, int r) { return CliffordOp(m, {factor::ZPattern{r}}); }

    int m() const { return m_; }
    const std::vector<CliffordFactor>& factors() const { return factors_; }

    void push_back(CliffordFactor f) {
        std::visit([this](const auto& x) { validate(x); }, f);
        factors_.push_back(std::move(f));
    }

    friend CliffordOp operator*(const CliffordOp& lhs, const CliffordOp& rhs) {
        if (lhs.m_ != rhs.m_) throw DimensionError("Clifford dimension mismatch");
        CliffordOp out = lhs;
        out.factors_.insert(out.factors_.end(), rhs.factors_.begin(), rhs.factors_.end());
        return out;
    }

    CliffordOp dagger() const {
        CliffordOp out(m_);
        for (auto it = factors_.rbegin(); it != factors_.rend(); ++it) {
            std::visit(
                [&](const auto& f) {
                    using T = std::decay_t<decltype(f)>;
                    if constexpr (std::is_same_v<T, factor::Perm>) {
                        out.factors_.push_back(factor::Perm{*f.p.inverse()});
                    } else if constexpr (std::is_same_v<T, factor::DiagQuartic>) {
                        out.factors_.push_back(factor::DiagQuartic{f.s, !f.conjugate});
                    } else {
                        out.factors_.push_back(f);
                    }
                },
                *it);
        }
        return out;
    }

   private:
    void validate(const factor::Perm& f) const {
        if (f.p.rows() != m_ || f.p.cols() != m_) throw DimensionError("G_D matrix must be m x m");
        if (!f.p.inverse()) throw DomainError("G_D requires an invertible matrix");
    }
    void validate(const factor::DiagQuartic& f) const {
        if (f.s.rows() != m_ || f.s.cols() != m_) throw DimensionError("G_U matrix must be m x m");
        if (!f.s.is_symmetric()) throw DomainError("G_U requires a symmetric matrix");
    }
    void validate(const factor::PartialHadamard& f) const {
        if (f.r < 0 || f.r > m_) throw DomainError("G_Omega rank out of range");
    }
    void validate(const factor::ZPattern& f) const {
        if (f.r < 0 || f.r > m_) throw DomainError("Z rank out of range");
    }

    int m_;
    std::vector<CliffordFactor> factors_;
};

namespace detail {

inline void apply_factor(int m, const factor::Perm& f, CVec& x) {
    const BitMat pt = f.p.transpose();
    CVec out(x.size());
    for (std::uint32_t v = 0; v < x.size(); ++v) out[pt.apply_word(v)] = x[v];
    x = std::move(out);
    (void)m;
}

inline void apply_factor(int, const factor::DiagQuartic& f, CVec& x) {
    const QuadraticForm q(f.s);
    for (std::uint32_t v = 0; v < x.size(); ++v) x[v] = rotate_quarter(x[v], f.conjugate ? -q(v) : q(v));
}

inline void apply_factor(int m, const factor::PartialHadamard& f, CVec& x) {
    for (int t = 0; t < f.r; ++t) {
        const std::size_t h = std::size_t{1} << (m - 1 - t);
        for (std::size_t i = 0; i < x.size(); i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const cd u = x[j];
                const cd v = x[j + h];
                x[j] = u + v;
                x[j + h] = u - v;
            }
    }
    if (f.r > 0) {
        const double scale = std::pow(2.0, -0.5 * f.r);
        for (cd& z : x) z *= scale;
    }
}

inline void apply_factor(int m, const factor::ZPattern& f, CVec& x) {
    const std::uint32_t tail = low_mask(m - f.r);
    for (std::uint32_t v = 0; v < x.size(); ++v)
        if (parity(v & tail)) x[v] = -x[v];
}

}  // namespace detail

/// Applies the factors right to left.
inline CVec apply(const CliffordOp& op, std::span<const cd> x) {
    if (x.size() != (std::size_t{1} << op.m())) throw DimensionError("vector length must be 2^m");
    CVec out(x.begin(), x.end());
    const auto& fs = op.factors();
    for (auto it = fs.rbegin(); it != fs.rend(); ++it)
        std::visit([&](const auto& f) { detail::apply_factor(op.m(), f, out); }, *it);
    return out;
}

inline constexpr int kMaxDenseDim = 5;

/// Materializes the operator column by column (test oracle only).
inline Eigen::MatrixXcd dense(const CliffordOp& op) {
    if (op.m() > kMaxDenseDim) throw ResourceError("dense Clifford matrices are limited to m <= 5");
    const std::size_t n = std::size_t{1} << op.m();
    Eigen::MatrixXcd out(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    CVec e(n);
    for (std::size_t j = 0; j < n; ++j) {
        std::fill(e.begin(), e.end(), cd{});
        e[j] = 1.0;
        const CVec col = bssc::apply(op, e);
        for (std::size_t i = 0; i < n; ++i) out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = col[i];
    }
    return out;
}

/// Row i of the result is c_i with G E(e_i) G^dagger = +-E(c_i), found by
/// conjugating each basis Pauli. With this row convention
/// phi(G1 G2) = phi(G2) phi(G1).
inline SymplecticElement phi(const CliffordOp& op) {
    const int m = op.m();
    if (m > kMaxDenseDim) throw ResourceError("phi uses dense conjugation, limited to m <= 5");
    const std::size_t n = std::size_t{1} << m;
    const CliffordOp adj = op.dagger();
    BitMat f(2 * m, 2 * m);
    CVec e(n);
    for (int i = 0; i < 2 * m; ++i) {
        const PauliElement basis = PauliElement::e(BitVec::unit(2 * m, i));
        std::vector<CVec> cols(n);
        for (std::size_t w = 0; w < n; ++w) {
            std::fill(e.begin(), e.end(), cd{});
            e[w] = 1.0;
            cols[w] = bssc::apply(op, bssc::apply(basis, bssc::apply(adj, e)));
        }
        // Column 0 locates a; the unit columns give the sign pattern of b.
        std::uint32_t a = 0;
        std::size_t hits = 0;
        for (std::uint32_t v = 0; v < n; ++v)
            if (std::abs(cols[0][v]) > 0.5) {
                a = v;
                ++hits;
            }
        if (hits != 1) throw ConsistencyError("conjugate is not a Pauli matrix");
        const cd mu = cols[0][a];
        std::uint32_t b = 0;
        for (int j = 0; j < m; ++j) {
            const std::uint32_t w = std::uint32_t{1} << (m - 1 - j);
            if (std::real(cols[w][w ^ a] / mu) < 0) b |= w;
        }
        const PauliElement found = PauliElement::d(BitVec(m, a), BitVec(m, b));
        for (std::uint32_t w = 0; w < n; ++w) {
            std::fill(e.begin(), e.end(), cd{});
            e[w] = mu;
            const CVec expect = bssc::apply(found, e);
            for (std::size_t v = 0; v < n; ++v)
                if (std::abs(expect[v] - cols[w][v]) > 1e-9) throw ConsistencyError("conjugate is not a Pauli matrix");
        }
        // mu must be +-i^{a.b}, i.e. the conjugate is +-E(a,b).
        const cd ratio = mu / i_pow(std::popcount(a & b));
        if (std::abs(std::imag(ratio)) > 1e-9) throw ConsistencyError("conjugate is not Hermitian");
        for (int j = 0; j < m; ++j) {
            f.set(i, j, (a >> (m - 1 - j)) & 1u);
            f.set(i, m + j, (b >> (m - 1 - j)) & 1u);
        }
    }
    return SymplecticElement(std::move(f));
}

/// prod_{i=r+1}^m (1 + v_i + w_i) mod 2: true iff v and w agree on their last m - r coordinates.
inline bool f_eval(const BitVec& v, const BitVec& w, int r) {
    if (v.size() != w.size()) throw DimensionError("f_eval length mismatch");
    return ((v.word() ^ w.word()) & low_mask(v.size() - r)) == 0;
}

/// G_F = G_D(P_I^T) G_U(S~_r) G_Omega(r): its columns, up to the sign
/// introduced by Z(m,r), are the codewords sharing `label`.
inline CliffordOp bssc_generator(const CosetLabel& label) {
    const int m = label.m();
    return CliffordOp::g_d(label.sub.completion().transpose()) * CliffordOp::g_u(label.embedded_s()) *
           CliffordOp::g_omega(m, label.r);
}

/// G_Omega(r) G_U(S~_r) G_D(P_I), whose phi is exactly coset_rep(label).
inline CliffordOp coset_preimage(const CosetLabel& label) {
    const int m = label.m();
    return CliffordOp::g_omega(m, label.r) * CliffordOp::g_u(label.embedded_s()) *
           CliffordOp::g_d(label.sub.completion());
}

}  // namespace bssc
