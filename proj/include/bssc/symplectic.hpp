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

// Sp(2m;2) in Bruhat-generator form and the right cosets of the parabolic
// subgroup generated by F_D(P) F_U(S).
//
// Vectors of F2^{2m} are BitVecs of length 2m holding (a, b) with a in the
// first m coordinates. Matrices act on row vectors: c -> c^T F.

#include <cstdint>
#include <utility>

#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"

namespace bssc {

inline BitMat omega(int m) {
    BitMat out(2 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        out.set(i, m + i, true);
        out.set(m + i, i, true);
    }
    return out;
}

inline bool is_symplectic(const BitMat& f) {
    if (f.rows() != f.cols() || f.rows() % 2 != 0) return false;
    const BitMat w = omega(f.rows() / 2);
    return f * w * f.transpose() == w;
}

/// <(a,b),(c,d)> = b.c + a.d
inline bool symplectic_inner(const BitVec& c1, const BitVec& c2) {
    if (c1.size() != c2.size() || c1.size() % 2 != 0) throw DimensionError("symplectic vectors must share an even length");
    const int m = c1.size() / 2;
    return dot(c1.tail(m), c2.head(m)) != dot(c1.head(m), c2.tail(m));
}

class SymplecticElement {
   public:
    explicit SymplecticElement(BitMat matrix) : matrix_(std::move(matrix)) {
        if (!is_symplectic(matrix_)) throw DomainError("matrix does not preserve the symplectic form");
    }

    int m() const { return matrix_.rows() / 2; }
    const BitMat& matrix() const { return matrix_; }

    SymplecticElement operator*(const SymplecticElement& o) const { return SymplecticElement(matrix_ * o.matrix_); }

    /// F^{-1} = Omega F^T Omega.
    SymplecticElement inverse() const {
        const BitMat w = omega(m());
        return SymplecticElement(w * matrix_.transpose() * w);
    }

    /// c^T F
    BitVec act(const BitVec& c) const {
        if (c.size() != matrix_.rows()) throw DimensionError("vector length mismatch");
        return BitVec(matrix_.cols(), matrix_.apply_transpose_word(c.word()));
    }

    friend bool operator==(const SymplecticElement&, const SymplecticElement&) = default;

   private:
    BitMat matrix_;
};

/// [[P, 0], [0, P^{-T}]]
inline SymplecticElement f_d(const BitMat& p) {
    const auto inv = p.inverse();
    if (!inv) throw DomainError("F_D requires an invertible matrix");
    const int m = p.rows();
    BitMat out(2 * m, 2 * m);
    out.set_block(0, 0, p);
    out.set_block(m, m, inv->transpose());
    return SymplecticElement(std::move(out));
}

/// [[I, S], [0, I]]
inline SymplecticElement f_u(const BitMat& s) {
    if (!s.is_symmetric()) throw DomainError("F_U requires a symmetric matrix");
    const int m = s.rows();
    BitMat out = BitMat::identity(2 * m);
    out.set_block(0, m, s);
    return SymplecticElement(std::move(out));
}

/// I_{m|r}: I_r in the upper-left corner, zero elsewhere.
inline BitMat leading_identity(int m, int r) {
    BitMat out(m, m);
    for (int i = 0; i < r; ++i) out.set(i, i, true);
    return out;
}

/// [[I_{m|-r}, I_{m|r}], [I_{m|r}, I_{m|-r}]]
inline SymplecticElement f_omega(int m, int r) {
    if (r < 0 || r > m) throw DomainError("F_Omega rank out of range");
    const BitMat top = leading_identity(m, r);
    const BitMat rest = BitMat::identity(m) + top;
    BitMat out(2 * m, 2 * m);
    out.set_block(0, 0, rest);
    out.set_block(0, m, top);
    out.set_block(m, 0, top);
    out.set_block(m, m, rest);
    return SymplecticElement(std::move(out));
}

/// Symmetric r x r matrix from its upper triangle packed row-major, first
/// entry in the most significant of the r(r+1)/2 bits.
inline BitMat symmetric_from_bits(int r, std::uint64_t bits) {
    const int n = r * (r + 1) / 2;
    BitMat s(r, r);
    int t = 0;
    for (int i = 0; i < r; ++i)
        for (int j = i; j < r; ++j, ++t)
            if ((bits >> (n - 1 - t)) & 1u) {
                s.set(i, j, true);
                s.set(j, i, true);
            }
    return s;
}

inline std::uint64_t symmetric_bits(const BitMat& s) {
    std::uint64_t bits = 0;
    for (int i = 0; i < s.rows(); ++i)
        for (int j = i; j < s.cols(); ++j) bits = (bits << 1) | (s(i, j) ? 1u : 0u);
    return bits;
}

/// (r, H, S_r) naming one right coset of the parabolic subgroup.
struct CosetLabel {
    int r = 0;
    BinarySubspace sub;
    BitMat s_r;

    CosetLabel() = default;
    CosetLabel(BinarySubspace h, BitMat s) : r(h.rank()), sub(std::move(h)), s_r(std::move(s)) {
        if (s_r.rows() != r || s_r.cols() != r) throw DimensionError("S_r must be r x r");
        if (!s_r.is_symmetric()) throw DomainError("S_r must be symmetric");
    }

    int m() const { return sub.ambient(); }

    /// S~_r: S_r embedded in the upper-left corner of an m x m zero matrix.
    BitMat embedded_s() const {
        BitMat out(m(), m());
        out.set_block(0, 0, s_r);
        return out;
    }

    friend bool operator==(const CosetLabel& a, const CosetLabel& b) { return a.sub == b.sub && a.s_r == b.s_r; }
};

/// F_O(P_I, S_r) = F_D(P_I) F_U(S~_r) F_Omega(r)
inline SymplecticElement coset_rep(const CosetLabel& label) {
    return f_d(label.sub.completion()) * f_u(label.embedded_s()) * f_omega(label.m(), label.r);
}

inline std::uint64_t labels_of_rank(int m, int r) {
    const int sbits = r * (r + 1) / 2;
    if (sbits >= 64) throw ResourceError("coset count overflows 64 bits");
    const std::uint64_t g = gaussian_binomial(m, r);
    if (g > (UINT64_MAX >> sbits)) throw ResourceError("coset count overflows 64 bits");
    return g << sbits;
}

/// sum_r [m choose r]_2 2^{r(r+1)/2}
inline std::uint64_t coset_count(int m) {
    std::uint64_t total = 0;
    for (int r = 0; r <= m; ++r) {
        const std::uint64_t n = labels_of_rank(m, r);
        if (total > UINT64_MAX - n) throw ResourceError("coset count overflows 64 bits");
        total += n;
    }
    return total;
}

/// Order: ascending r, then subspace order, then S_r bits.
inline std::uint64_t coset_index(const CosetLabel& label) {
    std::uint64_t offset = 0;
    for (int r = 0; r < label.r; ++r) offset += labels_of_rank(label.m(), r);
    const int sbits = label.r * (label.r + 1) / 2;
    return offset + (subspace_index(label.sub) << sbits) + symmetric_bits(label.s_r);
}

inline CosetLabel coset_at(int m, std::uint64_t idx) {
    for (int r = 0; r <= m; ++r) {
        const std::uint64_t n = labels_of_rank(m, r);
        if (idx < n) {
            const int sbits = r * (r + 1) / 2;
            return CosetLabel(subspace_at(m, r, idx >> sbits), symmetric_from_bits(r, idx & ((std::uint64_t{1} << sbits) - 1)));
        }
        idx -= n;
    }
    throw DomainError("coset index out of range");
}

inline auto enumerate_cosets(int m) {
    if (m < 1 || m > kMaxDim) throw DomainError("m out of range");
    return IndexedRange(coset_count(m), [m](std::uint64_t i) { return coset_at(m, i); });
}

}  // namespace bssc
