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

// Single-codeword reconstruction from Pauli spectra and greedy multi-user
// recovery with least-squares re-fitting.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <span>
#include <vector>

#include "bssc/codebook.hpp"
#include "bssc/errors.hpp"
#include "bssc/gf2.hpp"
#include "bssc/pauli.hpp"
#include "bssc/types.hpp"

namespace bssc {

namespace detail {

/// Bits of y (length m) at `positions`, first position in the MSB.
inline std::uint32_t gather(std::uint32_t y, int m, const std::vector<int>& positions) {
    std::uint32_t out = 0;
    for (int p : positions) out = (out << 1) | ((y >> (m - 1 - p)) & 1u);
    return out;
}

inline int signal_dim(std::size_t n) {
    if (n == 0 || !std::has_single_bit(n)) throw DimensionError("signal length must be a power of two");
    const int m = std::countr_zero(n);
    if (m > kMaxDim) throw DimensionError("signal dimension too large");
    return m;
}

/// Column i of S_r from a spectrum location y0 = I_I S_r f_i + H~_I v.
inline std::uint32_t s_column_from(std::uint32_t y0, const BinarySubspace& h) {
    const int m = h.ambient();
    const std::uint32_t v = gather(y0, m, h.non_leading());
    const std::uint32_t z = y0 ^ h.dual_basis().apply_word(v);
    return gather(z, m, h.leading());
}

inline BitMat matrix_from_columns(int r, const std::vector<std::uint32_t>& cols) {
    BitMat s(r, r);
    for (int j = 0; j < r; ++j) s.set_col(j, BitVec(r, cols[static_cast<std::size_t>(j)]));
    return s;
}

/// Support of the dual coset b_tail, ordered by the coordinate vector x.
inline CVec dechirped_support(std::span<const cd> s, const BinarySubspace& h, const BitVec& b_tail, const BitMat& s_r) {
    const int r = h.rank();
    const SupportMap at(h, b_tail);
    const QuadraticForm q(s_r);
    CVec t(std::size_t{1} << r);
    for (std::uint32_t x = 0; x < t.size(); ++x) t[x] = rotate_quarter(s[at(x)], -q(x));
    return t;
}

inline std::size_t argmax_abs(std::span<const cd> v) {
    std::size_t best = 0;
    double bv = std::norm(v[0]);
    for (std::size_t k = 1; k < v.size(); ++k) {
        const double x = std::norm(v[k]);
        if (x > bv) {
            bv = x;
            best = k;
        }
    }
    return best;
}

}  // namespace detail

// ---- Algorithm 1 ----------------------------------------------------------

/// Relative threshold separating exact zeros from nonzeros in the noiseless path.
inline constexpr double kNoiselessTol = 1e-6;

/// Exact recovery of the parameters of c * w for a single codeword w.
inline BsscParams decode_noiseless(std::span<const cd> w) {
    const int m = detail::signal_dim(w.size());
    const std::size_t n = w.size();
    const double energy = norm2(w);
    if (!(energy > 0.0) || !std::isfinite(energy)) throw DecodeError("signal has no finite energy");
    const double tol = kNoiselessTol * energy;

    // on-off pattern: the nonzero spectrum set must be the dual subspace
    const CVec spec0 = pauli_spectrum(w, BitVec(m));
    std::vector<BitVec> dual_elems;
    for (std::uint32_t y = 0; y < n; ++y)
        if (std::abs(spec0[y]) > tol) dual_elems.emplace_back(m, y);
    const BinarySubspace dual_sub = rcef(m, dual_elems);
    if (dual_elems.size() != (std::size_t{1} << dual_sub.rank()))
        throw DecodeError("spectrum support is not a subspace");
    const BinarySubspace h = dual(dual_sub);
    const int r = h.rank();

    std::vector<std::uint32_t> cols(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        const CVec spec = pauli_spectrum(w, h.basis().col(i));
        std::optional<std::uint32_t> y0;
        for (std::uint32_t y = 0; y < n && !y0; ++y)
            if (std::abs(spec[y]) > tol) y0 = y;
        if (!y0) throw DecodeError("empty shifted spectrum");
        cols[static_cast<std::size_t>(i)] = detail::s_column_from(*y0, h);
    }
    const BitMat s_r = detail::matrix_from_columns(r, cols);
    if (!s_r.is_symmetric()) throw DecodeError("recovered S_r is not symmetric");

    const double amp_tol = kNoiselessTol * energy / static_cast<double>(n);
    std::optional<std::uint32_t> a0;
    for (std::uint32_t a = 0; a < n && !a0; ++a)
        if (std::norm(w[a]) > amp_tol) a0 = a;
    const BitVec b_tail(m - r, h.dual_basis().apply_transpose_word(*a0));

    CVec t = detail::dechirped_support(w, h, b_tail, s_r);
    wht(std::span<cd>(t));
    const std::size_t peak = detail::argmax_abs(t);
    for (std::size_t k = 0; k < t.size(); ++k)
        if (k != peak && std::abs(t[k]) > tol) throw DecodeError("dechirped signal has no unique peak");

    BsscParams p(CosetLabel(h, s_r), BitVec::concat(BitVec(r, static_cast<std::uint32_t>(peak)), b_tail));
    const cd c = inner(std::span<const cd>(synthesize(p).to_complex()), w);
    if (std::abs(std::norm(c) - energy) > tol) throw DecodeError("signal is not a single codeword");
    return p;
}

// ---- robust candidate estimation -------------------------------------------

/// Greedy span of the largest |spectrum| locations up to dimension m - r;
/// returns its dual, the rank-r on-off hypothesis.
inline BinarySubspace detect_dual_subspace(std::span<const cd> spectrum, int r) {
    const int m = detail::signal_dim(spectrum.size());
    if (r < 0 || r > m) throw DimensionError("rank hypothesis out of range");
    std::vector<std::uint32_t> order(spectrum.size() - 1);
    std::iota(order.begin(), order.end(), 1u);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::uint32_t x, std::uint32_t y) { return std::norm(spectrum[x]) > std::norm(spectrum[y]); });
    std::vector<BitVec> picked;
    int dim = 0;
    for (std::uint32_t y : order) {
        if (dim == m - r) break;
        picked.emplace_back(m, y);
        if (rcef(m, picked).rank() > dim) {
            ++dim;
        } else {
            picked.pop_back();
        }
    }
    return dual(rcef(m, picked));
}

struct Candidate {
    BsscParams params;
    double score = 0.0;  // |<w, s>|
};

/// Rank-r estimate with magnitude-based selections. `spec0` is the a = 0
/// spectrum of s, shared across rank hypotheses.
inline Candidate estimate_candidate(std::span<const cd> s, std::span<const cd> spec0, int r) {
    const int m = detail::signal_dim(s.size());
    const BinarySubspace h = detect_dual_subspace(spec0, r);

    std::vector<std::uint32_t> cols(static_cast<std::size_t>(r));
    std::vector<double> witness(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) {
        const CVec spec = pauli_spectrum(s, h.basis().col(i));
        const std::size_t y = detail::argmax_abs(spec);
        cols[static_cast<std::size_t>(i)] = detail::s_column_from(static_cast<std::uint32_t>(y), h);
        witness[static_cast<std::size_t>(i)] = std::abs(spec[y]);
    }
    BitMat s_r = detail::matrix_from_columns(r, cols);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) {
            // column i holds S[.][i]; keep the entry backed by the stronger witness
            const bool v = witness[static_cast<std::size_t>(i)] >= witness[static_cast<std::size_t>(j)] ? s_r(j, i) : s_r(i, j);
            s_r.set(i, j, v);
            s_r.set(j, i, v);
        }

    std::vector<double> coset_energy(std::size_t{1} << (m - r), 0.0);
    for (std::uint32_t a = 0; a < s.size(); ++a) coset_energy[h.dual_basis().apply_transpose_word(a)] += std::norm(s[a]);
    const auto tail = static_cast<std::uint32_t>(std::max_element(coset_energy.begin(), coset_energy.end()) - coset_energy.begin());
    const BitVec b_tail(m - r, tail);

    CVec t = detail::dechirped_support(s, h, b_tail, s_r);
    wht(std::span<cd>(t));
    const auto head = static_cast<std::uint32_t>(detail::argmax_abs(t));

    Candidate c{BsscParams(CosetLabel(h, std::move(s_r)), BitVec::concat(BitVec(r, head), b_tail)), 0.0};
    if (coset_energy[tail] > 0.0) c.score = std::abs(inner(std::span<const cd>(synthesize(c.params).to_complex()), s));
    return c;
}

inline Candidate estimate_candidate(std::span<const cd> s, int r) {
    const int m = detail::signal_dim(s.size());
    const CVec spec0 = pauli_spectrum(s, BitVec(m));
    return estimate_candidate(s, spec0, r);
}

// ---- least squares ---------------------------------------------------------

/// argmin_h ||s - A h|| over the chosen atoms, via the Gram system; falls back
/// to the pseudo-inverse when the Gram matrix is singular.
inline CVec least_squares(const std::vector<CVec>& atoms, std::span<const cd> s) {
    const auto n = static_cast<Eigen::Index>(s.size());
    const auto l = static_cast<Eigen::Index>(atoms.size());
    Eigen::MatrixXcd a(n, l);
    for (Eigen::Index j = 0; j < l; ++j)
        for (Eigen::Index i = 0; i < n; ++i) a(i, j) = atoms[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    const Eigen::Map<const Eigen::VectorXcd> sv(s.data(), n);
    const Eigen::MatrixXcd gram = a.adjoint() * a;
    const Eigen::VectorXcd rhs = a.adjoint() * sv;
    Eigen::VectorXcd h;
    const Eigen::LDLT<Eigen::MatrixXcd> ldlt(gram);
    const double diag_max = gram.diagonal().real().maxCoeff();
    const double diag_min = ldlt.vectorD().real().minCoeff();
    if (ldlt.info() == Eigen::Success && diag_min > 1e-12 * diag_max) {
        h = ldlt.solve(rhs);
    } else {
        h = gram.completeOrthogonalDecomposition().pseudoInverse() * rhs;
    }
    return CVec(h.data(), h.data() + l);
}

struct MultiUserResult {
    std::vector<BsscParams> recovered;  // empty for codebooks without algebraic labels
    std::vector<std::uint64_t> ids;     // filled when the codebook has an index
    CVec coefficients;
    double residual_norm = 0.0;
};

/// Rank hypotheses to evaluate; empty means 0..m. The BC codebook uses {m}.
struct DecodeOptions {
    std::vector<int> ranks;
};

namespace detail {

/// Refits all coefficients and returns the residual s - A h.
inline CVec refit(const std::vector<CVec>& atoms, std::span<const cd> s, CVec& coefficients) {
    coefficients = least_squares(atoms, s);
    CVec res(s.begin(), s.end());
    for (std::size_t j = 0; j < atoms.size(); ++j)
        for (std::size_t i = 0; i < res.size(); ++i) res[i] -= coefficients[j] * atoms[j][i];
    return res;
}

}  // namespace detail

/// Greedy recovery of L superposed codewords: per step, one candidate per
/// rank hypothesis, the best-scoring unused one is kept, then all
/// coefficients are refit.
inline MultiUserResult decode_multi(std::span<const cd> s, int users, const DecodeOptions& opt = {}) {
    const int m = detail::signal_dim(s.size());
    if (users < 1) throw DomainError("need at least one user");
    std::vector<int> ranks = opt.ranks;
    if (ranks.empty()) {
        ranks.resize(static_cast<std::size_t>(m + 1));
        std::iota(ranks.begin(), ranks.end(), 0);
    }
    std::uint64_t available = 0;
    for (int r : ranks) {
        if (r < 0 || r > m) throw DimensionError("rank hypothesis out of range");
        const std::uint64_t labels = labels_of_rank(m, r);
        available = labels > ((UINT64_MAX - available) >> m) ? UINT64_MAX : available + (labels << m);
    }
    if (static_cast<std::uint64_t>(users) > available) throw DomainError("more users than codewords");

    MultiUserResult out;
    std::vector<CVec> atoms;
    CVec residual(s.begin(), s.end());
    for (int l = 0; l < users; ++l) {
        const CVec spec0 = pauli_spectrum(residual, BitVec(m));
        std::optional<Candidate> best;
        for (int r : ranks) {
            Candidate c = estimate_candidate(residual, spec0, r);
            if (std::find(out.recovered.begin(), out.recovered.end(), c.params) != out.recovered.end()) continue;
            if (!best || c.score > best->score) best = std::move(c);
        }
        if (!best) {
            // every hypothesis repeated a chosen codeword: take the first unused one
            for (int r : ranks) {
                for (std::uint64_t k = 0; k < (labels_of_rank(m, r) << m) && !best; ++k) {
                    std::uint64_t before = 0;
                    for (int q = 0; q < r; ++q) before += labels_of_rank(m, q);
                    BsscParams p = params_at(m, (before << m) + k);
                    if (std::find(out.recovered.begin(), out.recovered.end(), p) == out.recovered.end())
                        best = Candidate{std::move(p), 0.0};
                }
                if (best) break;
            }
        }
        atoms.push_back(synthesize(best->params).to_complex());
        out.recovered.push_back(std::move(best->params));
        residual = detail::refit(atoms, s, out.coefficients);
    }
    out.residual_norm = std::sqrt(norm2(residual));
    return out;
}

}  // namespace bssc
