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

// Heisenberg-Weyl operators i^k D(a,b), D(a,b) = X^{a_1}Z^{b_1} (x) ... (x) X^{a_m}Z^{b_m},
// acting on length-2^m complex vectors in O(N).

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"
#include "bssc/symplectic.hpp"
#include "bssc/types.hpp"

namespace bssc {

struct PauliElement {
    BitVec a;
    BitVec b;
    int k = 0;  // phase exponent of i, in {0,1,2,3}

    /// D(a,b)
    static PauliElement d(BitVec a, BitVec b) {
        if (a.size() != b.size()) throw DimensionError("Pauli a/b length mismatch");
        return {std::move(a), std::move(b), 0};
    }
    /// E(a,b) = i^{a.b} D(a,b), a.b counted over the integers.
    static PauliElement e(BitVec a, BitVec b) {
        if (a.size() != b.size()) throw DimensionError("Pauli a/b length mismatch");
        const int k = std::popcount(a.word() & b.word()) & 3;
        return {std::move(a), std::move(b), k};
    }
    /// E(c) for c = (a,b) of length 2m.
    static PauliElement e(const BitVec& c) { return e(c.head(c.size() / 2), c.tail(c.size() / 2)); }

    int m() const { return a.size(); }
    BitVec symplectic() const { return BitVec::concat(a, b); }
    bool is_diagonal() const { return a.is_zero(); }

    friend bool operator==(const PauliElement&, const PauliElement&) = default;
};

/// D(a,b) D(c,d) = (-1)^{b.c} D(a+c, b+d), phases carried along.
inline PauliElement mult(const PauliElement& p1, const PauliElement& p2) {
    if (p1.m() != p2.m()) throw DimensionError("Pauli dimension mismatch");
    const int sign = dot(p1.b, p2.a) ? 2 : 0;
    return {p1.a + p2.a, p1.b + p2.b, (p1.k + p2.k + sign) & 3};
}

inline bool commutes(const PauliElement& p1, const PauliElement& p2) {
    if (p1.m() != p2.m()) throw DimensionError("Pauli dimension mismatch");
    return !symplectic_inner(p1.symplectic(), p2.symplectic());
}

/// (p x)(w) = i^k (-1)^{b.(w+a)} x(w+a)
inline CVec apply(const PauliElement& p, std::span<const cd> x) {
    const std::size_t n = std::size_t{1} << p.m();
    if (x.size() != n) throw DimensionError("vector length must be 2^m");
    const std::uint32_t a = p.a.word();
    const std::uint32_t b = p.b.word();
    CVec out(n);
    for (std::uint32_t w = 0; w < n; ++w) {
        const std::uint32_t src = w ^ a;
        out[w] = rotate_quarter(x[src], p.k + (parity(b & src) ? 2 : 0));
    }
    return out;
}

/// In-place unnormalized Walsh-Hadamard transform y(u) = sum_v (-1)^{u.v} x(v).
template <class T>
void wht(std::span<T> x) {
    const std::size_t n = x.size();
    if (n == 0 || !std::has_single_bit(n)) throw DimensionError("WHT length must be a power of two");
    for (std::size_t h = 1; h < n; h <<= 1)
        for (std::size_t i = 0; i < n; i += h << 1)
            for (std::size_t j = i; j < i + h; ++j) {
                const T u = x[j];
                const T v = x[j + h];
                x[j] = u + v;
                x[j + h] = u - v;
            }
}

inline CVec wht(CVec x) {
    wht(std::span<cd>(x));
    return x;
}

/// y -> s^dagger E(a,y) s for every y, via one pointwise product and one WHT.
inline CVec pauli_spectrum(std::span<const cd> s, const BitVec& a) {
    const std::size_t n = s.size();
    if (n != (std::size_t{1} << a.size())) throw DimensionError("signal length must be 2^m");
    const std::uint32_t aw = a.word();
    CVec t(n);
    for (std::uint32_t v = 0; v < n; ++v) t[v] = std::conj(s[v ^ aw]) * s[v];
    wht(std::span<cd>(t));
    if (aw != 0)
        for (std::uint32_t y = 0; y < n; ++y) t[y] = rotate_quarter(t[y], std::popcount(aw & y));
    return t;
}

/// Commuting group {E(x^T A, x^T B)} generated by the rows of [A | B].
class StabilizerGroup {
   public:
    StabilizerGroup(BitMat gen_a, BitMat gen_b) : gen_a_(std::move(gen_a)), gen_b_(std::move(gen_b)) {
        if (gen_a_.rows() != gen_b_.rows() || gen_a_.cols() != gen_b_.cols())
            throw DimensionError("stabilizer generator blocks differ in shape");
        if (BitMat::hstack(gen_a_, gen_b_).rank() != gen_a_.rows())
            throw DomainError("stabilizer generators are not independent");
        const auto g = generators();
        for (std::size_t i = 0; i < g.size(); ++i)
            for (std::size_t j = i + 1; j < g.size(); ++j)
                if (!commutes(g[i], g[j])) throw DomainError("stabilizer generators do not commute");
    }

    int m() const { return gen_a_.cols(); }
    int size_log2() const { return gen_a_.rows(); }
    const BitMat& gen_a() const { return gen_a_; }
    const BitMat& gen_b() const { return gen_b_; }

    std::vector<PauliElement> generators() const {
        std::vector<PauliElement> out;
        for (int i = 0; i < gen_a_.rows(); ++i) out.push_back(PauliElement::e(gen_a_.row(i), gen_b_.row(i)));
        return out;
    }

    /// E(x^T A, x^T B) for x = 0 .. 2^k - 1.
    PauliElement element(std::uint32_t x) const {
        return PauliElement::e(BitVec(m(), gen_a_.apply_transpose_word(x)), BitVec(m(), gen_b_.apply_transpose_word(x)));
    }

    std::vector<PauliElement> elements() const {
        std::vector<PauliElement> out;
        for (std::uint32_t x = 0; x < (std::uint32_t{1} << size_log2()); ++x) out.push_back(element(x));
        return out;
    }

    /// Multiplies out every subset of generators with exact phase
    /// bookkeeping; true if some product is -I.
    bool contains_minus_identity() const {
        const auto g = generators();
        for (std::uint32_t x = 0; x < (std::uint32_t{1} << g.size()); ++x) {
            PauliElement acc = PauliElement::d(BitVec(m()), BitVec(m()));
            for (std::size_t i = 0; i < g.size(); ++i)
                if ((x >> i) & 1u) acc = mult(acc, g[i]);
            if (acc.a.is_zero() && acc.b.is_zero() && acc.k == 2) return true;
        }
        return false;
    }

   private:
    BitMat gen_a_;
    BitMat gen_b_;
};

/// Maximal stabilizer whose common eigenbasis is the set of codewords
/// sharing `label`: generator rows [H_I^T | S_r I_I^T] and [0 | H~_I^T].
inline StabilizerGroup stabilizer_of_bssc(const CosetLabel& label) {
    const int m = label.m();
    const int r = label.r;
    const BinarySubspace& h = label.sub;
    BitMat a(m, m);
    BitMat b(m, m);
    for (int j = 0; j < r; ++j) {
        for (int i = 0; i < m; ++i) a.set(j, i, h.basis()(i, j));
        for (int l = 0; l < r; ++l)
            if (label.s_r(j, l)) b.set(j, h.leading()[static_cast<std::size_t>(l)], true);
    }
    for (int k = 0; k < m - r; ++k)
        for (int i = 0; i < m; ++i) b.set(r + k, i, h.dual_basis()(i, k));
    return StabilizerGroup(std::move(a), std::move(b));
}

}  // namespace bssc
