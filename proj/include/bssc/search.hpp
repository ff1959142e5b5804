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

// Exhaustive best-atom search over codebooks, and the greedy multi-user
// decoder built on it. Ties resolve to the smaller codeword id.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "bssc/codebook.hpp"
#include "bssc/decoder.hpp"
#include "bssc/errors.hpp"
#include "bssc/pauli.hpp"
#include "bssc/types.hpp"

namespace bssc {

struct Match {
    std::uint64_t id = 0;
    double corr = -1.0;  // |<atom, s>|
};

class CodebookSearch {
   public:
    virtual ~CodebookSearch() = default;
    virtual int m() const = 0;
    virtual std::uint64_t size() const = 0;
    virtual CVec atom(std::uint64_t id) const = 0;
    virtual std::optional<BsscParams> params(std::uint64_t) const { return std::nullopt; }
    /// Best atom for `s` outside `excluded`.
    virtual Match best_match(std::span<const cd> s, std::span<const std::uint64_t> excluded) const = 0;
};

namespace detail {

inline bool is_excluded(std::span<const std::uint64_t> excluded, std::uint64_t id) {
    return std::find(excluded.begin(), excluded.end(), id) != excluded.end();
}

/// Running argmax with a tolerance band in which the smaller id wins.
struct Best {
    Match m;
    double tol = 0.0;
    void offer(std::uint64_t id, double corr) {
        if (corr > m.corr + tol || (corr >= m.corr - tol && id < m.id) || m.corr < 0.0) m = {id, corr};
    }
};

inline double tie_tol(std::span<const cd> s) { return 1e-10 * std::sqrt(norm2(s)) + 1e-300; }

}  // namespace detail

/// Linear scan over materialized vectors.
class ExplicitSearch : public CodebookSearch {
   public:
    explicit ExplicitSearch(std::vector<CVec> atoms) : atoms_(std::move(atoms)) {
        if (atoms_.empty()) throw DomainError("empty codebook");
        m_ = detail::signal_dim(atoms_.front().size());
        for (const CVec& a : atoms_)
            if (a.size() != atoms_.front().size()) throw DimensionError("codebook vectors differ in length");
    }
    int m() const override { return m_; }
    std::uint64_t size() const override { return atoms_.size(); }
    CVec atom(std::uint64_t id) const override { return atoms_.at(id); }
    Match best_match(std::span<const cd> s, std::span<const std::uint64_t> excluded) const override {
        detail::Best best{{}, detail::tie_tol(s)};
        for (std::uint64_t id = 0; id < atoms_.size(); ++id)
            if (!detail::is_excluded(excluded, id)) best.offer(id, std::abs(inner(std::span<const cd>(atoms_[id]), s)));
        return best.m;
    }

   private:
    std::vector<CVec> atoms_;
    int m_ = 0;
};

/// The full subspace chirp codebook, one WHT per (label, support coset).
class BsscSearch : public CodebookSearch {
   public:
    explicit BsscSearch(int m) : m_(m) {
        const std::uint64_t n = coset_count(m);
        labels_.reserve(n);
        for (std::uint64_t c = 0; c < n; ++c) labels_.push_back(coset_at(m, c));
    }
    int m() const override { return m_; }
    std::uint64_t size() const override { return labels_.size() << m_; }
    CVec atom(std::uint64_t id) const override { return synthesize(*params(id)).to_complex(); }
    std::optional<BsscParams> params(std::uint64_t id) const override {
        if (id >= size()) throw DomainError("codeword id out of range");
        return BsscParams(labels_[id >> m_], BitVec(m_, static_cast<std::uint32_t>(id & low_mask(m_))));
    }
    Match best_match(std::span<const cd> s, std::span<const std::uint64_t> excluded) const override {
        if (s.size() != (std::size_t{1} << m_)) throw DimensionError("signal length must be 2^m");
        detail::Best best{{}, detail::tie_tol(s)};
        for (std::uint64_t c = 0; c < labels_.size(); ++c) {
            const CosetLabel& label = labels_[c];
            const int r = label.r;
            const double amp = std::pow(2.0, -0.5 * r);
            for (std::uint32_t tail = 0; tail < (std::uint32_t{1} << (m_ - r)); ++tail) {
                CVec t = detail::dechirped_support(s, label.sub, BitVec(m_ - r, tail), label.s_r);
                wht(std::span<cd>(t));
                for (std::uint32_t head = 0; head < t.size(); ++head) {
                    const std::uint64_t id = (c << m_) | (std::uint64_t{head} << (m_ - r)) | tail;
                    if (!detail::is_excluded(excluded, id)) best.offer(id, amp * std::abs(t[head]));
                }
            }
        }
        return best.m;
    }

   private:
    int m_;
    std::vector<CosetLabel> labels_;
};

/// The binary chirp slice (r = m), searched exactly by branch and bound over
/// the rows of S. At depth j the leading j x j block A of S is fixed and
///   D_t(beta) = sum_u s(u, t) i^{-u^T A u} (-1)^{beta . u}
/// bounds every completion by 2^{-m/2} sum_t max_beta |D_t(beta)|.
class ChirpSearch : public CodebookSearch {
   public:
    explicit ChirpSearch(int m) : m_(m) {
        if (m < 1 || m > kMaxDim) throw DimensionError("chirp dimension out of range");
        (void)bc_size(m);
    }
    int m() const override { return m_; }
    std::uint64_t size() const override { return bc_size(m_); }
    CVec atom(std::uint64_t id) const override { return synthesize(*params(id)).to_complex(); }
    std::optional<BsscParams> params(std::uint64_t id) const override {
        if (id >= size()) throw DomainError("codeword id out of range");
        return bc_params_at(m_, id);
    }

    Match best_match(std::span<const cd> s, std::span<const std::uint64_t> excluded) const override {
        if (s.size() != (std::size_t{1} << m_)) throw DimensionError("signal length must be 2^m");
        Run run{this, excluded, detail::Best{{}, detail::tie_tol(s)}, BitMat(m_, m_), 0};
        run.scale = std::pow(2.0, -0.5 * m_);
        run.descend(CVec(s.begin(), s.end()), 0);
        last_nodes_ = run.nodes;
        return run.best.m;
    }

    /// Nodes expanded by the last search; exposed for diagnostics.
    std::uint64_t last_nodes() const { return last_nodes_; }

   private:
    struct Run {
        const ChirpSearch* self;
        std::span<const std::uint64_t> excluded;
        detail::Best best;
        BitMat s;
        std::uint64_t nodes;
        double scale = 1.0;

        /// d has layout [t * 2^j + beta] at depth j.
        void descend(const CVec& d, int j) {
            ++nodes;
            const int m = self->m_;
            if (j == m) {
                const std::uint64_t sbits = symmetric_bits(s) << m;
                for (std::uint32_t beta = 0; beta < d.size(); ++beta) {
                    const std::uint64_t id = sbits | beta;
                    if (!detail::is_excluded(excluded, id)) best.offer(id, scale * std::abs(d[beta]));
                }
                return;
            }
            const std::size_t width = std::size_t{1} << j;          // beta range at depth j
            const std::size_t tails = std::size_t{1} << (m - j - 1);  // t' range at depth j + 1
            const std::size_t kids = width << 1;
            std::vector<CVec> child(kids, CVec(d.size()));
            std::vector<std::pair<double, std::uint32_t>> bound(kids);
            for (std::uint32_t k = 0; k < kids; ++k) {
                const std::uint32_t sigma = k >> 1;
                const int dg = static_cast<int>(k & 1u);
                CVec& out = child[k];
                double total = 0.0;
                for (std::size_t tp = 0; tp < tails; ++tp) {
                    const cd* d0 = &d[tp * width];
                    const cd* d1 = &d[(tails + tp) * width];
                    cd* o = &out[tp * (width << 1)];
                    double mx = 0.0;
                    for (std::uint32_t b = 0; b < width; ++b) {
                        const cd x = d0[b];
                        const cd y = rotate_quarter(d1[b ^ sigma], -dg);
                        o[(b << 1)] = x + y;
                        o[(b << 1) | 1u] = x - y;
                        mx = std::max({mx, std::norm(o[b << 1]), std::norm(o[(b << 1) | 1u])});
                    }
                    total += std::sqrt(mx);
                }
                bound[k] = {scale * total, k};
            }
            std::stable_sort(bound.begin(), bound.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
            for (const auto& [b, k] : bound) {
                if (best.m.corr >= 0.0 && b < best.m.corr - best.tol) break;
                const std::uint32_t sigma = k >> 1;
                for (int i = 0; i < j; ++i) {
                    const bool v = ((sigma >> (j - 1 - i)) & 1u) != 0;
                    s.set(i, j, v);
                    s.set(j, i, v);
                }
                s.set(j, j, (k & 1u) != 0);
                descend(child[k], j + 1);
            }
        }
    };

    int m_;
    mutable std::uint64_t last_nodes_ = 0;
};

/// Seeded random codebook; vectors are regenerated on demand when the
/// codebook is too large to hold.
class RandomSearch : public CodebookSearch {
   public:
    static constexpr std::uint64_t kMaterializeLimit = std::uint64_t{1} << 24;

    RandomSearch(int m, std::uint64_t size, std::uint64_t seed) : m_(m), size_(size), seed_(seed) {
        if (size == 0) throw DomainError("empty codebook");
        if (size <= (kMaterializeLimit >> m)) atoms_ = random_codebook(m, size, seed);
    }
    int m() const override { return m_; }
    std::uint64_t size() const override { return size_; }
    CVec atom(std::uint64_t id) const override {
        if (id >= size_) throw DomainError("codeword id out of range");
        return atoms_.empty() ? random_atom(m_, seed_, id) : atoms_[id];
    }
    Match best_match(std::span<const cd> s, std::span<const std::uint64_t> excluded) const override {
        detail::Best best{{}, detail::tie_tol(s)};
        for (std::uint64_t id = 0; id < size_; ++id) {
            if (detail::is_excluded(excluded, id)) continue;
            const double c = atoms_.empty() ? std::abs(inner(std::span<const cd>(random_atom(m_, seed_, id)), s))
                                            : std::abs(inner(std::span<const cd>(atoms_[id]), s));
            best.offer(id, c);
        }
        return best.m;
    }

   private:
    int m_;
    std::uint64_t size_;
    std::uint64_t seed_;
    std::vector<CVec> atoms_;
};

/// Greedy recovery where each step takes the exhaustive argmax correlation.
inline MultiUserResult decode_multi_exhaustive(std::span<const cd> s, const CodebookSearch& book, int users) {
    if (users < 1) throw DomainError("need at least one user");
    if (static_cast<std::uint64_t>(users) > book.size()) throw DomainError("more users than codewords");
    if (s.size() != (std::size_t{1} << book.m())) throw DimensionError("signal length must be 2^m");
    MultiUserResult out;
    std::vector<CVec> atoms;
    CVec residual(s.begin(), s.end());
    for (int l = 0; l < users; ++l) {
        const Match hit = book.best_match(residual, out.ids);
        out.ids.push_back(hit.id);
        atoms.push_back(book.atom(hit.id));
        if (auto p = book.params(hit.id)) out.recovered.push_back(std::move(*p));
        residual = detail::refit(atoms, s, out.coefficients);
    }
    out.residual_norm = std::sqrt(norm2(residual));
    return out;
}

inline MultiUserResult decode_multi_exhaustive(std::span<const cd> s, const std::vector<CVec>& codebook, int users) {
    return decode_multi_exhaustive(s, ExplicitSearch(codebook), users);
}

}  // namespace bssc
