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

// Bit-packed linear algebra over F2.
//
// A BitVec of length n stores coordinate i (0-based) at bit n-1-i of its
// word, so the word is the integer image v -> sum v_i 2^{n-1-i}. That is the
// tensor-product index of e_v = e_{v_1} (x) ... (x) e_{v_n}, which lets a
// BitVec double as an index into a length-2^n complex vector.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <iterator>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "bssc/errors.hpp"

namespace bssc {

inline constexpr int kMaxBits = 32;
inline constexpr int kMaxDim = 16;

inline constexpr std::uint32_t low_mask(int n) {
    return n >= 32 ? 0xffffffffu : ((std::uint32_t{1} << n) - 1u);
}

inline bool parity(std::uint32_t x) { return (std::popcount(x) & 1) != 0; }

class BitVec {
   public:
    BitVec() = default;
    explicit BitVec(int size, std::uint32_t word = 0) : size_(size), word_(word & low_mask(size)) {
        if (size < 0 || size > kMaxBits) throw DimensionError("BitVec length out of range");
    }

    static BitVec unit(int size, int i) { return BitVec(size, std::uint32_t{1} << (size - 1 - i)); }

    static BitVec from_string(std::string_view s) {
        BitVec v(static_cast<int>(s.size()));
        for (int i = 0; i < v.size_; ++i) {
            if (s[i] != '0' && s[i] != '1') throw DimensionError("bit string must contain only 0/1");
            v.set(i, s[i] == '1');
        }
        return v;
    }

    int size() const { return size_; }
    std::uint32_t word() const { return word_; }

    bool operator[](int i) const { return ((word_ >> (size_ - 1 - i)) & 1u) != 0; }
    void set(int i, bool value) {
        const std::uint32_t bit = std::uint32_t{1} << (size_ - 1 - i);
        word_ = value ? (word_ | bit) : (word_ & ~bit);
    }

    int weight() const { return std::popcount(word_); }
    bool is_zero() const { return word_ == 0; }

    BitVec& operator+=(const BitVec& o) {
        if (o.size_ != size_) throw DimensionError("BitVec length mismatch");
        word_ ^= o.word_;
        return *this;
    }
    friend BitVec operator+(BitVec a, const BitVec& b) { return a += b; }

    friend bool dot(const BitVec& a, const BitVec& b) {
        if (a.size_ != b.size_) throw DimensionError("BitVec length mismatch");
        return parity(a.word_ & b.word_);
    }

    /// First k coordinates.
    BitVec head(int k) const { return BitVec(k, word_ >> (size_ - k)); }
    /// Last k coordinates.
    BitVec tail(int k) const { return BitVec(k, word_ & low_mask(k)); }
    static BitVec concat(const BitVec& hi, const BitVec& lo) {
        return BitVec(hi.size_ + lo.size_, (hi.word_ << lo.size_) | lo.word_);
    }

    std::string to_string() const {
        std::string s(static_cast<std::size_t>(size_), '0');
        for (int i = 0; i < size_; ++i)
            if ((*this)[i]) s[static_cast<std::size_t>(i)] = '1';
        return s;
    }

    friend bool operator==(const BitVec&, const BitVec&) = default;

   private:
    int size_ = 0;
    std::uint32_t word_ = 0;
};

/// Dense binary matrix, one word per column (row 0 is the most significant bit).
class BitMat {
   public:
    BitMat() = default;
    BitMat(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(cols), 0u) {
        if (rows < 0 || rows > kMaxBits || cols < 0) throw DimensionError("BitMat shape out of range");
    }

    static BitMat identity(int n) {
        BitMat out(n, n);
        for (int i = 0; i < n; ++i) out.set(i, i, true);
        return out;
    }

    static BitMat from_rows(const std::vector<std::string>& rows) {
        const int nr = static_cast<int>(rows.size());
        const int nc = nr == 0 ? 0 : static_cast<int>(rows[0].size());
        BitMat out(nr, nc);
        for (int i = 0; i < nr; ++i) {
            if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != nc)
                throw DimensionError("ragged matrix rows");
            for (int j = 0; j < nc; ++j) {
                const char ch = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (ch != '0' && ch != '1') throw DimensionError("matrix rows must contain only 0/1");
                out.set(i, j, ch == '1');
            }
        }
        return out;
    }

    static BitMat from_columns(int rows, std::span<const BitVec> cols) {
        BitMat out(rows, static_cast<int>(cols.size()));
        for (int j = 0; j < out.cols_; ++j) out.set_col(j, cols[static_cast<std::size_t>(j)]);
        return out;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    bool operator()(int i, int j) const { return ((data_[static_cast<std::size_t>(j)] >> (rows_ - 1 - i)) & 1u) != 0; }
    void set(int i, int j, bool value) {
        auto& w = data_[static_cast<std::size_t>(j)];
        const std::uint32_t bit = std::uint32_t{1} << (rows_ - 1 - i);
        w = value ? (w | bit) : (w & ~bit);
    }

    std::uint32_t col_word(int j) const { return data_[static_cast<std::size_t>(j)]; }
    BitVec col(int j) const { return BitVec(rows_, col_word(j)); }
    void set_col(int j, const BitVec& v) {
        if (v.size() != rows_) throw DimensionError("column length mismatch");
        data_[static_cast<std::size_t>(j)] = v.word();
    }
    BitVec row(int i) const {
        BitVec out(cols_);
        for (int j = 0; j < cols_; ++j) out.set(j, (*this)(i, j));
        return out;
    }

    BitMat transpose() const {
        BitMat out(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j)
                if ((*this)(i, j)) out.set(j, i, true);
        return out;
    }

    /// A x as a word; x is the integer image of a length-cols vector.
    std::uint32_t apply_word(std::uint32_t x) const {
        std::uint32_t acc = 0;
        for (int j = 0; j < cols_; ++j)
            if ((x >> (cols_ - 1 - j)) & 1u) acc ^= data_[static_cast<std::size_t>(j)];
        return acc;
    }
    /// A^T y as a word; y is the integer image of a length-rows vector.
    std::uint32_t apply_transpose_word(std::uint32_t y) const {
        std::uint32_t acc = 0;
        for (int j = 0; j < cols_; ++j)
            if (parity(data_[static_cast<std::size_t>(j)] & y)) acc |= std::uint32_t{1} << (cols_ - 1 - j);
        return acc;
    }

    friend BitVec operator*(const BitMat& a, const BitVec& x) {
        if (x.size() != a.cols_) throw DimensionError("matrix-vector shape mismatch");
        return BitVec(a.rows_, a.apply_word(x.word()));
    }

    friend BitMat operator*(const BitMat& a, const BitMat& b) {
        if (a.cols_ != b.rows_) throw DimensionError("matrix product shape mismatch");
        BitMat out(a.rows_, b.cols_);
        for (int j = 0; j < b.cols_; ++j) out.data_[static_cast<std::size_t>(j)] = a.apply_word(b.col_word(j));
        return out;
    }

    friend BitMat operator+(const BitMat& a, const BitMat& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionError("matrix sum shape mismatch");
        BitMat out = a;
        for (std::size_t j = 0; j < out.data_.size(); ++j) out.data_[j] ^= b.data_[j];
        return out;
    }

    int rank() const {
        std::vector<std::uint32_t> v = data_;
        int rank = 0;
        for (int bit = rows_ - 1; bit >= 0; --bit) {
            const std::uint32_t mask = std::uint32_t{1} << bit;
            auto it = std::find_if(v.begin() + rank, v.end(), [&](std::uint32_t w) { return (w & mask) != 0; });
            if (it == v.end()) continue;
            std::iter_swap(v.begin() + rank, it);
            for (std::size_t k = static_cast<std::size_t>(rank) + 1; k < v.size(); ++k)
                if (v[k] & mask) v[k] ^= v[static_cast<std::size_t>(rank)];
            ++rank;
        }
        return rank;
    }

    /// Inverse over F2, or nullopt when singular (or non-square).
    std::optional<BitMat> inverse() const {
        if (rows_ != cols_) return std::nullopt;
        const int n = rows_;
        std::vector<std::uint64_t> aug(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i)
            aug[static_cast<std::size_t>(i)] =
                (std::uint64_t{row(i).word()} << n) | (std::uint64_t{1} << (n - 1 - i));
        for (int c = 0; c < n; ++c) {
            const std::uint64_t bit = std::uint64_t{1} << (2 * n - 1 - c);
            int p = c;
            while (p < n && !(aug[static_cast<std::size_t>(p)] & bit)) ++p;
            if (p == n) return std::nullopt;
            std::swap(aug[static_cast<std::size_t>(p)], aug[static_cast<std::size_t>(c)]);
            for (int i = 0; i < n; ++i)
                if (i != c && (aug[static_cast<std::size_t>(i)] & bit))
                    aug[static_cast<std::size_t>(i)] ^= aug[static_cast<std::size_t>(c)];
        }
        BitMat out(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if ((aug[static_cast<std::size_t>(i)] >> (n - 1 - j)) & 1u) out.set(i, j, true);
        return out;
    }

    bool is_symmetric() const { return rows_ == cols_ && *this == transpose(); }
    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](std::uint32_t w) { return w == 0; });
    }

    BitMat block(int r0, int c0, int nr, int nc) const {
        BitMat out(nr, nc);
        for (int i = 0; i < nr; ++i)
            for (int j = 0; j < nc; ++j) out.set(i, j, (*this)(r0 + i, c0 + j));
        return out;
    }

    void set_block(int r0, int c0, const BitMat& b) {
        for (int i = 0; i < b.rows_; ++i)
            for (int j = 0; j < b.cols_; ++j) set(r0 + i, c0 + j, b(i, j));
    }

    static BitMat hstack(const BitMat& a, const BitMat& b) {
        if (a.rows_ != b.rows_) throw DimensionError("hstack row mismatch");
        BitMat out(a.rows_, a.cols_ + b.cols_);
        std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
        std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.cols_);
        return out;
    }

    static BitMat vstack(const BitMat& a, const BitMat& b) {
        if (a.cols_ != b.cols_) throw DimensionError("vstack column mismatch");
        BitMat out(a.rows_ + b.rows_, a.cols_);
        for (int j = 0; j < a.cols_; ++j)
            out.data_[static_cast<std::size_t>(j)] = (a.col_word(j) << b.rows_) | b.col_word(j);
        return out;
    }

    /// One line of '0'/'1' per row, each terminated by '\n'.
    std::string to_string() const {
        std::string s;
        for (int i = 0; i < rows_; ++i) {
            for (int j = 0; j < cols_; ++j) s.push_back((*this)(i, j) ? '1' : '0');
            s.push_back('\n');
        }
        return s;
    }

    friend bool operator==(const BitMat&, const BitMat&) = default;

   private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<std::uint32_t> data_;
};

/// An r-dimensional subspace H of F2^m in column reduced echelon form.
///
/// basis() is H_I (m x r) whose rows at the leading set I form I_r, and whose
/// column j is zero above its leading row. dual_basis() is the canonical
/// H~_I (rows at I~ equal I_{m-r}, rows at I equal the transpose of H_I's rows
/// at I~). completion() is P_I = [H_I | I_{I~}] and completion_inv_t() its
/// transposed inverse [I_I | H~_I].
class BinarySubspace {
   public:
    BinarySubspace() = default;

    /// Builds from an echelon basis whose leading rows are `leading`. The basis
    /// is trusted to be in reduced form; use rcef() for arbitrary generators.
    BinarySubspace(int m, std::vector<int> leading, BitMat basis)
        : m_(m), leading_(std::move(leading)), basis_(std::move(basis)) {
        const int r = rank();
        std::vector<bool> is_lead(static_cast<std::size_t>(m), false);
        for (int i : leading_) is_lead[static_cast<std::size_t>(i)] = true;
        for (int i = 0; i < m; ++i)
            if (!is_lead[static_cast<std::size_t>(i)]) non_leading_.push_back(i);

        dual_ = BitMat(m, m - r);
        for (int k = 0; k < m - r; ++k) {
            const int row = non_leading_[static_cast<std::size_t>(k)];
            dual_.set(row, k, true);
            for (int j = 0; j < r; ++j)
                if (basis_(row, j)) dual_.set(leading_[static_cast<std::size_t>(j)], k, true);
        }
        completion_ = BitMat::hstack(basis_, selector(non_leading_));
        completion_inv_t_ = BitMat::hstack(selector(leading_), dual_);
    }

    int ambient() const { return m_; }
    int rank() const { return static_cast<int>(leading_.size()); }
    const std::vector<int>& leading() const { return leading_; }
    const std::vector<int>& non_leading() const { return non_leading_; }
    const BitMat& basis() const { return basis_; }
    const BitMat& dual_basis() const { return dual_; }
    const BitMat& completion() const { return completion_; }
    const BitMat& completion_inv_t() const { return completion_inv_t_; }

    /// I_S: the columns of I_m indexed by S.
    BitMat selector(const std::vector<int>& rows) const {
        BitMat out(m_, static_cast<int>(rows.size()));
        for (std::size_t j = 0; j < rows.size(); ++j) out.set(rows[j], static_cast<int>(j), true);
        return out;
    }

    bool contains(const BitVec& v) const { return dual_.apply_transpose_word(v.word()) == 0; }

    /// All 2^r elements, ordered by the coordinate vector x in H_I x.
    std::vector<BitVec> elements() const {
        const int r = rank();
        std::vector<BitVec> out;
        out.reserve(std::size_t{1} << r);
        for (std::uint32_t x = 0; x < (std::uint32_t{1} << r); ++x) out.emplace_back(m_, basis_.apply_word(x));
        return out;
    }

    friend bool operator==(const BinarySubspace& a, const BinarySubspace& b) {
        return a.m_ == b.m_ && a.leading_ == b.leading_ && a.basis_ == b.basis_;
    }

   private:
    int m_ = 0;
    std::vector<int> leading_;
    std::vector<int> non_leading_;
    BitMat basis_;
    BitMat dual_;
    BitMat completion_;
    BitMat completion_inv_t_;
};

/// Span of `generators` in canonical column reduced echelon form.
inline BinarySubspace rcef(int m, std::span<const BitVec> generators) {
    if (m < 0 || m > kMaxDim) throw DimensionError("ambient dimension out of range");
    std::vector<std::uint32_t> pending;
    pending.reserve(generators.size());
    for (const BitVec& g : generators) {
        if (g.size() != m) throw DimensionError("generator length differs from ambient dimension");
        pending.push_back(g.word());
    }
    std::vector<std::uint32_t> basis;
    std::vector<int> leading;
    for (int row = 0; row < m; ++row) {
        const std::uint32_t bit = std::uint32_t{1} << (m - 1 - row);
        auto it = std::find_if(pending.begin(), pending.end(), [&](std::uint32_t w) { return (w & bit) != 0; });
        if (it == pending.end()) continue;
        const std::uint32_t pivot = *it;
        pending.erase(it);
        for (auto& w : pending)
            if (w & bit) w ^= pivot;
        for (auto& w : basis)
            if (w & bit) w ^= pivot;
        basis.push_back(pivot);
        leading.push_back(row);
    }
    BitMat h(m, static_cast<int>(basis.size()));
    for (std::size_t j = 0; j < basis.size(); ++j) h.set_col(static_cast<int>(j), BitVec(m, basis[j]));
    return BinarySubspace(m, std::move(leading), std::move(h));
}

inline BinarySubspace rcef(const BitMat& columns) {
    std::vector<BitVec> gens;
    for (int j = 0; j < columns.cols(); ++j) gens.push_back(columns.col(j));
    return rcef(columns.rows(), gens);
}

/// The orthogonal complement, re-echelonized.
inline BinarySubspace dual(const BinarySubspace& sub) { return rcef(sub.dual_basis()); }

/// All solutions of A x = c, as the coset x0 + ker(A) where x0 is the unique
/// coset element vanishing on the leading rows of ker(A); solutions are
/// listed as x0 + K t for t = 0, 1, ... with K the echelon kernel basis.
/// An inconsistent system yields an empty list.
inline std::vector<BitVec> solve_affine(const BitMat& a, const BitVec& c) {
    const int m = a.cols();
    if (c.size() != a.rows()) throw DimensionError("right-hand side length mismatch");
    if (m > kMaxDim) throw DimensionError("too many unknowns");

    // Row reduction on [A | c].
    std::vector<std::pair<std::uint32_t, bool>> rows;
    for (int i = 0; i < a.rows(); ++i) rows.emplace_back(a.row(i).word(), c[i]);
    std::vector<int> pivot_col;
    std::size_t rank = 0;
    for (int col = 0; col < m; ++col) {
        const std::uint32_t bit = std::uint32_t{1} << (m - 1 - col);
        std::size_t p = rank;
        while (p < rows.size() && !(rows[p].first & bit)) ++p;
        if (p == rows.size()) continue;
        std::swap(rows[p], rows[rank]);
        for (std::size_t i = 0; i < rows.size(); ++i)
            if (i != rank && (rows[i].first & bit)) {
                rows[i].first ^= rows[rank].first;
                rows[i].second = rows[i].second != rows[rank].second;
            }
        pivot_col.push_back(col);
        ++rank;
    }
    for (std::size_t i = rank; i < rows.size(); ++i)
        if (rows[i].second) return {};

    std::uint32_t x0 = 0;
    for (std::size_t i = 0; i < rank; ++i)
        if (rows[i].second) x0 |= std::uint32_t{1} << (m - 1 - pivot_col[i]);

    std::vector<BitVec> row_gens;
    for (std::size_t i = 0; i < rank; ++i) row_gens.emplace_back(m, rows[i].first);
    const BinarySubspace kernel = dual(rcef(m, row_gens));
    const BitMat& k = kernel.basis();
    for (int j = 0; j < kernel.rank(); ++j)
        if ((x0 >> (m - 1 - kernel.leading()[static_cast<std::size_t>(j)])) & 1u) x0 ^= k.col_word(j);

    std::vector<BitVec> out;
    out.reserve(std::size_t{1} << kernel.rank());
    for (std::uint32_t t = 0; t < (std::uint32_t{1} << kernel.rank()); ++t)
        out.emplace_back(m, x0 ^ k.apply_word(t));
    return out;
}

/// Gaussian binomial [m choose r]_2; throws ResourceError on uint64 overflow.
inline std::uint64_t gaussian_binomial(int m, int r) {
    if (r < 0 || r > m) return 0;
    // Product formula in 128-bit: prod_{i<r} (2^{m-i}-1)/(2^{i+1}-1), exact at every step.
    unsigned __int128 acc = 1;
    for (int i = 0; i < r; ++i) {
        acc *= (static_cast<unsigned __int128>(1) << (m - i)) - 1;
        acc /= (static_cast<unsigned __int128>(1) << (i + 1)) - 1;
        if (acc > static_cast<unsigned __int128>(UINT64_MAX)) throw ResourceError("Gaussian binomial overflows 64 bits");
    }
    return static_cast<std::uint64_t>(acc);
}

/// Integer quadratic form v^T S v mod 4 of a symmetric binary S, with v read
/// as a 0/1 integer vector: sum_i S_ii v_i + 2 sum_{i<j} S_ij v_i v_j.
class QuadraticForm {
   public:
    QuadraticForm() = default;
    explicit QuadraticForm(const BitMat& s) : n_(s.rows()), upper_(static_cast<std::size_t>(s.rows()), 0u) {
        if (!s.is_symmetric()) throw DomainError("quadratic form needs a symmetric matrix");
        for (int i = 0; i < n_; ++i) {
            const std::uint32_t bit_i = std::uint32_t{1} << (n_ - 1 - i);
            if (s(i, i)) diag_ |= bit_i;
            for (int j = i + 1; j < n_; ++j)
                if (s(i, j)) upper_[static_cast<std::size_t>(i)] |= std::uint32_t{1} << (n_ - 1 - j);
        }
    }

    int operator()(std::uint32_t v) const {
        int q = std::popcount(diag_ & v);
        bool off = false;
        for (int i = 0; i < n_; ++i)
            if ((v >> (n_ - 1 - i)) & 1u) off ^= parity(upper_[static_cast<std::size_t>(i)] & v);
        return (q + (off ? 2 : 0)) & 3;
    }

   private:
    int n_ = 0;
    std::uint32_t diag_ = 0;
    std::vector<std::uint32_t> upper_;
};

/// Random-access range over indices [0, size) whose elements are produced on
/// demand by a function object.
template <class F>
class IndexedRange {
   public:
    using value_type = std::invoke_result_t<const F&, std::uint64_t>;

    IndexedRange(std::uint64_t size, F f) : size_(size), f_(std::move(f)) {}

    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = IndexedRange::value_type;
        using difference_type = std::ptrdiff_t;
        using reference = value_type;
        using pointer = void;

        iterator() = default;
        iterator(const IndexedRange* owner, std::uint64_t i) : owner_(owner), i_(i) {}
        value_type operator*() const { return owner_->f_(i_); }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            iterator tmp = *this;
            ++i_;
            return tmp;
        }
        bool operator==(const iterator& o) const { return i_ == o.i_; }

       private:
        const IndexedRange* owner_ = nullptr;
        std::uint64_t i_ = 0;
    };

    std::uint64_t size() const { return size_; }
    iterator begin() const { return iterator(this, 0); }
    iterator end() const { return iterator(this, size_); }
    value_type operator[](std::uint64_t i) const { return f_(i); }

   private:
    std::uint64_t size_;
    F f_;
};

namespace detail {

/// Lexicographic successor of a sorted r-subset of {0..m-1}; false at the end.
inline bool next_combination(std::vector<int>& c, int m) {
    const int r = static_cast<int>(c.size());
    int i = r - 1;
    while (i >= 0 && c[static_cast<std::size_t>(i)] == m - r + i) --i;
    if (i < 0) return false;
    ++c[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < r; ++j) c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
    return true;
}

/// Free (row, column) entries of an echelon basis with leading rows `lead`,
/// in enumeration order: column-major, rows ascending.
inline std::vector<std::pair<int, int>> free_positions(int m, const std::vector<int>& lead) {
    std::vector<bool> is_lead(static_cast<std::size_t>(m), false);
    for (int i : lead) is_lead[static_cast<std::size_t>(i)] = true;
    std::vector<std::pair<int, int>> out;
    for (std::size_t j = 0; j < lead.size(); ++j)
        for (int q = lead[j] + 1; q < m; ++q)
            if (!is_lead[static_cast<std::size_t>(q)]) out.emplace_back(q, static_cast<int>(j));
    return out;
}

inline BinarySubspace subspace_from(int m, const std::vector<int>& lead, std::uint64_t free_bits) {
    const auto pos = free_positions(m, lead);
    BitMat h(m, static_cast<int>(lead.size()));
    for (std::size_t j = 0; j < lead.size(); ++j) h.set(lead[j], static_cast<int>(j), true);
    const std::size_t nfree = pos.size();
    for (std::size_t t = 0; t < nfree; ++t)
        if ((free_bits >> (nfree - 1 - t)) & 1u) h.set(pos[t].first, pos[t].second, true);
    return BinarySubspace(m, lead, std::move(h));
}

}  // namespace detail

/// Free bits of an echelon basis, packed in enumeration order.
inline std::uint64_t free_bits(const BinarySubspace& sub) {
    const auto pos = detail::free_positions(sub.ambient(), sub.leading());
    std::uint64_t bits = 0;
    for (const auto& [q, j] : pos) bits = (bits << 1) | (sub.basis()(q, j) ? 1u : 0u);
    return bits;
}

inline int free_bit_count(const BinarySubspace& sub) {
    return static_cast<int>(detail::free_positions(sub.ambient(), sub.leading()).size());
}

/// Position of `sub` in enumerate_grassmannian(m, r).
inline std::uint64_t subspace_index(const BinarySubspace& sub) {
    const int m = sub.ambient();
    const int r = sub.rank();
    std::vector<int> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
    std::uint64_t offset = 0;
    do {
        if (c == sub.leading()) return offset + free_bits(sub);
        offset += std::uint64_t{1} << detail::free_positions(m, c).size();
    } while (detail::next_combination(c, m));
    throw ConsistencyError("leading set not found");
}

/// The idx-th subspace of enumerate_grassmannian(m, r).
inline BinarySubspace subspace_at(int m, int r, std::uint64_t idx) {
    if (r < 0 || r > m) throw DomainError("rank out of range");
    std::vector<int> c(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) c[static_cast<std::size_t>(i)] = i;
    do {
        const std::uint64_t count = std::uint64_t{1} << detail::free_positions(m, c).size();
        if (idx < count) return detail::subspace_from(m, c, idx);
        idx -= count;
    } while (detail::next_combination(c, m));
    throw DomainError("subspace index out of range");
}

/// Every r-dimensional subspace of F2^m exactly once, ordered
/// lexicographically by leading set and then by free-entry bits.
class GrassmannianRange {
   public:
    GrassmannianRange(int m, int r) : m_(m), r_(r) {
        if (m < 0 || m > kMaxDim) throw DimensionError("ambient dimension out of range");
        if (r < 0 || r > m) throw DomainError("rank exceeds ambient dimension");
    }

    class iterator {
       public:
        using iterator_category = std::input_iterator_tag;
        using value_type = BinarySubspace;
        using difference_type = std::ptrdiff_t;
        using reference = BinarySubspace;
        using pointer = void;

        iterator() = default;
        iterator(int m, int r) : m_(m), lead_(static_cast<std::size_t>(r)), done_(false) {
            for (int i = 0; i < r; ++i) lead_[static_cast<std::size_t>(i)] = i;
            nfree_ = static_cast<int>(detail::free_positions(m_, lead_).size());
        }
        BinarySubspace operator*() const { return detail::subspace_from(m_, lead_, free_); }
        iterator& operator++() {
            if (++free_ < (std::uint64_t{1} << nfree_)) return *this;
            free_ = 0;
            if (!detail::next_combination(lead_, m_)) {
                done_ = true;
            } else {
                nfree_ = static_cast<int>(detail::free_positions(m_, lead_).size());
            }
            return *this;
        }
        iterator operator++(int) {
            iterator tmp = *this;
            ++*this;
            return tmp;
        }
        bool operator==(const iterator& o) const {
            if (done_ || o.done_) return done_ == o.done_;
            return lead_ == o.lead_ && free_ == o.free_;
        }

       private:
        int m_ = 0;
        std::vector<int> lead_;
        std::uint64_t free_ = 0;
        int nfree_ = 0;
        bool done_ = true;
    };

    iterator begin() const { return iterator(m_, r_); }
    iterator end() const { return iterator(); }
    std::uint64_t size() const { return gaussian_binomial(m_, r_); }

   private:
    int m_;
    int r_;
};

inline GrassmannianRange enumerate_grassmannian(int m, int r) { return GrassmannianRange(m, r); }

}  // namespace bssc
