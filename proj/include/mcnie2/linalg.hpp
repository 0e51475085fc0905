/*
   Copyright 2026 The mcnie2 authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "mcnie2/bytes.hpp"
#include "mcnie2/errors.hpp"
#include "mcnie2/gf2m.hpp"
#include "mcnie2/rng.hpp"

namespace mcnie2 {

/// Dense row vector over F_{2^m}. All entries share one FieldParams; the
/// field is carried even at length zero.
class ExtVector {
  public:
    ExtVector(const FieldParams& field, std::size_t n)
        : field_(&field), v_(n, FieldElement::zero(field)) {}

    ExtVector(const FieldParams& field, std::vector<FieldElement> entries)
        : field_(&field), v_(std::move(entries)) {
        for (const auto& e : v_)
            if (e.field() != field) throw std::invalid_argument("mixed fields in vector");
    }

    std::size_t size() const noexcept { return v_.size(); }
    const FieldParams& field() const noexcept { return *field_; }

    const FieldElement& operator[](std::size_t i) const { return v_[i]; }
    FieldElement& operator[](std::size_t i) { return v_[i]; }

    bool is_zero() const {
        return std::all_of(v_.begin(), v_.end(), [](const FieldElement& e) { return e.is_zero(); });
    }

    ExtVector slice(std::size_t from, std::size_t len) const {
        if (from + len > v_.size()) throw std::invalid_argument("slice out of range");
        return ExtVector(*field_, std::vector<FieldElement>(v_.begin() + from, v_.begin() + from + len));
    }

    static ExtVector concat(const ExtVector& a, const ExtVector& b) {
        if (a.field() != b.field()) throw std::invalid_argument("field parameter mismatch");
        std::vector<FieldElement> e = a.v_;
        e.insert(e.end(), b.v_.begin(), b.v_.end());
        return ExtVector(a.field(), std::move(e));
    }

    static ExtVector random(const FieldParams& field, std::size_t n, Rng& rng) {
        ExtVector r(field, n);
        for (std::size_t i = 0; i < n; ++i) r[i] = FieldElement(field, rng.bits(field.degree()));
        return r;
    }

    ExtVector operator+(const ExtVector& o) const {
        check_compatible(o);
        ExtVector r = *this;
        for (std::size_t i = 0; i < v_.size(); ++i) r.v_[i] += o.v_[i];
        return r;
    }
    ExtVector operator-(const ExtVector& o) const { return *this + o; }
    ExtVector operator-() const { return *this; }

    bool operator==(const ExtVector& o) const { return *field_ == *o.field_ && v_ == o.v_; }
    bool operator!=(const ExtVector& o) const { return !(*this == o); }

  private:
    void check_compatible(const ExtVector& o) const {
        if (*field_ != *o.field_ || v_.size() != o.v_.size())
            throw std::invalid_argument("vector dimension or field mismatch");
    }

    const FieldParams* field_;
    std::vector<FieldElement> v_;
};

/// Dense row-major matrix over F_{2^m}. Row-vector convention throughout:
/// vectors multiply matrices from the left (x * A).
class ExtMatrix {
  public:
    ExtMatrix(const FieldParams& field, std::size_t rows, std::size_t cols)
        : field_(&field), rows_(rows), cols_(cols), e_(rows * cols, FieldElement::zero(field)) {}

    static ExtMatrix identity(const FieldParams& field, std::size_t n) {
        ExtMatrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = FieldElement::one(field);
        return m;
    }

    static ExtMatrix random(const FieldParams& field, std::size_t rows, std::size_t cols, Rng& rng) {
        ExtMatrix m(field, rows, cols);
        for (auto& e : m.e_) e = FieldElement(field, rng.bits(field.degree()));
        return m;
    }

    static ExtMatrix from_rows(const std::vector<ExtVector>& rows, const FieldParams& field,
                               std::size_t cols) {
        ExtMatrix m(field, rows.size(), cols);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (rows[i].size() != cols || rows[i].field() != field)
                throw std::invalid_argument("row dimension or field mismatch");
            for (std::size_t j = 0; j < cols; ++j) m.at(i, j) = rows[i][j];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const FieldParams& field() const noexcept { return *field_; }

    const FieldElement& at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }
    FieldElement& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }

    ExtVector row(std::size_t r) const {
        std::vector<FieldElement> v(e_.begin() + r * cols_, e_.begin() + (r + 1) * cols_);
        return ExtVector(*field_, std::move(v));
    }

    void set_row(std::size_t r, const ExtVector& v) {
        if (v.size() != cols_ || v.field() != *field_)
            throw std::invalid_argument("row dimension or field mismatch");
        for (std::size_t j = 0; j < cols_; ++j) at(r, j) = v[j];
    }

    ExtMatrix transpose() const {
        ExtMatrix t(*field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    ExtMatrix submatrix(std::size_t r0, std::size_t c0, std::size_t nrows, std::size_t ncols) const {
        if (r0 + nrows > rows_ || c0 + ncols > cols_) throw std::invalid_argument("submatrix out of range");
        ExtMatrix s(*field_, nrows, ncols);
        for (std::size_t i = 0; i < nrows; ++i)
            for (std::size_t j = 0; j < ncols; ++j) s.at(i, j) = at(r0 + i, c0 + j);
        return s;
    }

    ExtMatrix operator*(const ExtMatrix& o) const {
        if (*field_ != *o.field_ || cols_ != o.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        ExtMatrix r(*field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const FieldElement& a = at(i, k);
                if (a.is_zero()) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r.at(i, j) += a * o.at(k, j);
            }
        return r;
    }

    ExtMatrix operator+(const ExtMatrix& o) const {
        if (*field_ != *o.field_ || rows_ != o.rows_ || cols_ != o.cols_)
            throw std::invalid_argument("matrix sum dimension mismatch");
        ExtMatrix r = *this;
        for (std::size_t i = 0; i < e_.size(); ++i) r.e_[i] += o.e_[i];
        return r;
    }
    ExtMatrix operator-(const ExtMatrix& o) const { return *this + o; }

    bool operator==(const ExtMatrix& o) const {
        return *field_ == *o.field_ && rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
    }
    bool operator!=(const ExtMatrix& o) const { return !(*this == o); }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap(at(a, j), at(b, j));
    }

    /// Gauss-Jordan inverse; throws on a singular or non-square input.
    ExtMatrix inverse() const;

  private:
    const FieldParams* field_;
    std::size_t rows_, cols_;
    std::vector<FieldElement> e_;
};

/// Row vector times matrix.
inline ExtVector operator*(const ExtVector& x, const ExtMatrix& A) {
    if (x.field() != A.field() || x.size() != A.rows())
        throw std::invalid_argument("vector-matrix dimension mismatch");
    ExtVector r(A.field(), A.cols());
    for (std::size_t i = 0; i < A.rows(); ++i) {
        if (x[i].is_zero()) continue;
        for (std::size_t j = 0; j < A.cols(); ++j) r[j] += x[i] * A.at(i, j);
    }
    return r;
}

inline ExtVector operator*(const FieldElement& c, const ExtVector& v) {
    ExtVector r = v;
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = c * v[i];
    return r;
}

namespace detail {

struct RrefInfo {
    std::vector<std::size_t> pivot_cols;
    std::size_t rank = 0;
};

/// Reduced row echelon form in place. Pivots on the first nonzero entry in
/// column order; exact arithmetic needs no pivoting heuristics.
inline RrefInfo rref(ExtMatrix& M) {
    RrefInfo info;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < M.cols() && pr < M.rows(); ++c) {
        std::size_t sel = M.rows();
        for (std::size_t r = pr; r < M.rows(); ++r)
            if (!M.at(r, c).is_zero()) {
                sel = r;
                break;
            }
        if (sel == M.rows()) continue;
        M.swap_rows(sel, pr);
        FieldElement piv_inv = M.at(pr, c).inv();
        for (std::size_t j = c; j < M.cols(); ++j) M.at(pr, j) *= piv_inv;
        for (std::size_t r = 0; r < M.rows(); ++r) {
            if (r == pr || M.at(r, c).is_zero()) continue;
            FieldElement f = M.at(r, c);
            for (std::size_t j = c; j < M.cols(); ++j) M.at(r, j) -= f * M.at(pr, j);
        }
        info.pivot_cols.push_back(c);
        ++pr;
    }
    info.rank = pr;
    return info;
}

}  // namespace detail

/// Rank over F_{2^m} by exact Gaussian elimination.
inline std::size_t rank_ext(const ExtMatrix& A) {
    ExtMatrix m = A;
    return detail::rref(m).rank;
}

inline ExtMatrix ExtMatrix::inverse() const {
    if (rows_ != cols_) throw std::invalid_argument("inverse of a non-square matrix");
    ExtMatrix aug(*field_, rows_, 2 * cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) aug.at(i, j) = at(i, j);
        aug.at(i, cols_ + i) = FieldElement::one(*field_);
    }
    detail::RrefInfo info = detail::rref(aug);
    // the identity block keeps [A | I] at full row rank; A is invertible
    // exactly when every pivot stays inside the left block
    if (info.rank != rows_ || info.pivot_cols.back() >= cols_)
        throw std::invalid_argument("matrix is singular");
    return aug.submatrix(0, cols_, rows_, cols_);
}

/// Basis of the left kernel {x : x A = 0}, as rows; row count equals
/// A.rows() - rank_ext(A).
inline ExtMatrix left_kernel(const ExtMatrix& A) {
    ExtMatrix M = A.transpose();
    detail::RrefInfo info = detail::rref(M);
    std::vector<bool> is_pivot(A.rows(), false);
    for (std::size_t c : info.pivot_cols) is_pivot[c] = true;
    ExtMatrix K(A.field(), A.rows() - info.rank, A.rows());
    std::size_t out = 0;
    for (std::size_t f = 0; f < A.rows(); ++f) {
        if (is_pivot[f]) continue;
        K.at(out, f) = FieldElement::one(A.field());
        for (std::size_t i = 0; i < info.rank; ++i) K.at(out, info.pivot_cols[i]) = -M.at(i, f);
        ++out;
    }
    return K;
}

enum class SolveMode { unique, any, all };

/// Solution of x A = b. `kernel` is populated only in SolveMode::all and
/// holds a basis of the left kernel of A.
struct Solution {
    ExtVector x;
    std::optional<ExtMatrix> kernel;
};

/// Solve x A = b for a row vector x of length A.rows().
///   unique: error unless the solution space is a single point
///   any:    one particular solution
///   all:    particular solution plus left-kernel basis
inline Solution solve_right(const ExtMatrix& A, const ExtVector& b, SolveMode mode) {
    if (b.size() != A.cols() || b.field() != A.field())
        throw std::invalid_argument("right-hand side does not match the system");
    const std::size_t unknowns = A.rows();
    ExtMatrix M(A.field(), A.cols(), unknowns + 1);
    for (std::size_t i = 0; i < A.cols(); ++i) {
        for (std::size_t j = 0; j < unknowns; ++j) M.at(i, j) = A.at(j, i);
        M.at(i, unknowns) = b[i];
    }
    detail::RrefInfo info = detail::rref(M);
    if (!info.pivot_cols.empty() && info.pivot_cols.back() == unknowns)
        throw no_solution("inconsistent linear system");
    ExtVector x(A.field(), unknowns);
    for (std::size_t i = 0; i < info.rank; ++i) x[info.pivot_cols[i]] = M.at(i, unknowns);
    if (mode == SolveMode::unique && info.rank < unknowns)
        throw ambiguous_solution("solution space has positive dimension");
    Solution s{std::move(x), std::nullopt};
    if (mode == SolveMode::all) s.kernel = left_kernel(A);
    return s;
}

/// Bit matrix over F_2, rows packed into 64-bit words.
class BaseMatrix {
  public:
    BaseMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_((cols + 63) / 64), w_(rows * wpr_, 0) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    bool bit(std::size_t r, std::size_t c) const { return (word(r, c / 64) >> (c % 64)) & 1; }
    void set_bit(std::size_t r, std::size_t c, bool v) {
        std::uint64_t m = std::uint64_t{1} << (c % 64);
        if (v)
            word(r, c / 64) |= m;
        else
            word(r, c / 64) &= ~m;
    }

    void xor_row(std::size_t dst, std::size_t src) {
        for (std::size_t k = 0; k < wpr_; ++k) word(dst, k) ^= word(src, k);
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t k = 0; k < wpr_; ++k) std::swap(word(a, k), word(b, k));
    }

    bool row_is_zero(std::size_t r) const {
        for (std::size_t k = 0; k < wpr_; ++k)
            if (word(r, k) != 0) return false;
        return true;
    }

    BaseMatrix transpose() const {
        BaseMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (bit(i, j)) t.set_bit(j, i, true);
        return t;
    }

    bool operator==(const BaseMatrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && w_ == o.w_;
    }

  private:
    std::uint64_t& word(std::size_t r, std::size_t k) { return w_[r * wpr_ + k]; }
    const std::uint64_t& word(std::size_t r, std::size_t k) const { return w_[r * wpr_ + k]; }

    std::size_t rows_, cols_, wpr_;
    std::vector<std::uint64_t> w_;
};

/// Plain bit vector companion to BaseMatrix.
struct BitVector {
    std::size_t n = 0;
    std::vector<std::uint64_t> w;

    BitVector() = default;
    explicit BitVector(std::size_t size) : n(size), w((size + 63) / 64, 0) {}

    bool bit(std::size_t i) const { return (w[i / 64] >> (i % 64)) & 1; }
    void set_bit(std::size_t i, bool v) {
        std::uint64_t m = std::uint64_t{1} << (i % 64);
        if (v)
            w[i / 64] |= m;
        else
            w[i / 64] &= ~m;
    }
    bool operator==(const BitVector& o) const { return n == o.n && w == o.w; }
};

namespace detail {

inline RrefInfo rref_base(BaseMatrix& M) {
    RrefInfo info;
    std::size_t pr = 0;
    for (std::size_t c = 0; c < M.cols() && pr < M.rows(); ++c) {
        std::size_t sel = M.rows();
        for (std::size_t r = pr; r < M.rows(); ++r)
            if (M.bit(r, c)) {
                sel = r;
                break;
            }
        if (sel == M.rows()) continue;
        M.swap_rows(sel, pr);
        for (std::size_t r = 0; r < M.rows(); ++r)
            if (r != pr && M.bit(r, c)) M.xor_row(r, pr);
        info.pivot_cols.push_back(c);
        ++pr;
    }
    info.rank = pr;
    return info;
}

}  // namespace detail

inline std::size_t rank_base(const BaseMatrix& A) {
    BaseMatrix m = A;
    return detail::rref_base(m).rank;
}

inline BaseMatrix left_kernel_base(const BaseMatrix& A) {
    BaseMatrix M = A.transpose();
    detail::RrefInfo info = detail::rref_base(M);
    std::vector<bool> is_pivot(A.rows(), false);
    for (std::size_t c : info.pivot_cols) is_pivot[c] = true;
    BaseMatrix K(A.rows() - info.rank, A.rows());
    std::size_t out = 0;
    for (std::size_t f = 0; f < A.rows(); ++f) {
        if (is_pivot[f]) continue;
        K.set_bit(out, f, true);
        for (std::size_t i = 0; i < info.rank; ++i)
            if (M.bit(i, f)) K.set_bit(out, info.pivot_cols[i], true);
        ++out;
    }
    return K;
}

struct BaseSolution {
    BitVector x;
    std::optional<BaseMatrix> kernel;
};

/// solve_right over F_2: x A = b with A a bit matrix.
inline BaseSolution solve_base(const BaseMatrix& A, const BitVector& b, SolveMode mode) {
    if (b.n != A.cols()) throw std::invalid_argument("right-hand side does not match the system");
    const std::size_t unknowns = A.rows();
    BaseMatrix M(A.cols(), unknowns + 1);
    for (std::size_t i = 0; i < A.cols(); ++i) {
        for (std::size_t j = 0; j < unknowns; ++j) M.set_bit(i, j, A.bit(j, i));
        M.set_bit(i, unknowns, b.bit(i));
    }
    detail::RrefInfo info = detail::rref_base(M);
    if (!info.pivot_cols.empty() && info.pivot_cols.back() == unknowns)
        throw no_solution("inconsistent linear system");
    BitVector x(unknowns);
    for (std::size_t i = 0; i < info.rank; ++i) x.set_bit(info.pivot_cols[i], M.bit(i, unknowns));
    if (mode == SolveMode::unique && info.rank < unknowns)
        throw ambiguous_solution("solution space has positive dimension");
    BaseSolution s{std::move(x), std::nullopt};
    if (mode == SolveMode::all) s.kernel = left_kernel_base(A);
    return s;
}

/// m x n bit matrix whose j-th column holds the polynomial-basis
/// coefficients of v[j].
inline BaseMatrix expand_to_base(const ExtVector& v) {
    const unsigned m = v.field().degree();
    BaseMatrix B(m, v.size());
    for (std::size_t j = 0; j < v.size(); ++j) {
        std::uint64_t bits = v[j].bits();
        while (bits != 0) {
            unsigned b = static_cast<unsigned>(std::countr_zero(bits));
            B.set_bit(b, j, true);
            bits &= bits - 1;
        }
    }
    return B;
}

/// Collapse a column of coefficient bits back to an element.
inline FieldElement element_from_column(const FieldParams& field, const BaseMatrix& B, std::size_t col) {
    std::uint64_t bits = 0;
    for (std::size_t i = 0; i < B.rows(); ++i)
        if (B.bit(i, col)) bits |= std::uint64_t{1} << i;
    return FieldElement(field, bits);
}

/// Bijection on {0,...,n-1}. As a matrix, row i has its one in column
/// map(i), so applying the permutation moves the value at i to map(i).
class Permutation {
  public:
    explicit Permutation(std::vector<std::uint32_t> map) : map_(std::move(map)) {
        std::vector<bool> seen(map_.size(), false);
        for (std::uint32_t v : map_) {
            if (v >= map_.size() || seen[v]) throw std::invalid_argument("permutation map is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(m));
    }

    /// Uniform random permutation (Fisher-Yates).
    static Permutation random(std::size_t n, Rng& rng) {
        std::vector<std::uint32_t> m(n);
        for (std::size_t i = 0; i < n; ++i) m[i] = static_cast<std::uint32_t>(i);
        for (std::size_t i = n; i > 1; --i) std::swap(m[i - 1], m[rng.index(i)]);
        return Permutation(std::move(m));
    }

    std::size_t size() const noexcept { return map_.size(); }
    std::uint32_t operator()(std::size_t i) const { return map_[i]; }

    Permutation inverse() const {
        std::vector<std::uint32_t> inv(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(inv));
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[i] != i) return false;
        return true;
    }

    bool operator==(const Permutation& o) const { return map_ == o.map_; }

  private:
    std::vector<std::uint32_t> map_;
};

/// v P (or v P^-1 with inverse set). Row-vector convention: (v P)[map(i)] = v[i].
inline ExtVector apply_permutation(const ExtVector& v, const Permutation& P, bool inverse = false) {
    if (v.size() != P.size()) throw std::invalid_argument("permutation size mismatch");
    ExtVector r(v.field(), v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (inverse)
            r[i] = v[P(i)];
        else
            r[P(i)] = v[i];
    }
    return r;
}

/// M P (or M P^-1): apply the permutation to every row.
inline ExtMatrix apply_permutation(const ExtMatrix& M, const Permutation& P, bool inverse = false) {
    if (M.cols() != P.size()) throw std::invalid_argument("permutation size mismatch");
    ExtMatrix r(M.field(), M.rows(), M.cols());
    for (std::size_t i = 0; i < M.rows(); ++i) r.set_row(i, apply_permutation(M.row(i), P, inverse));
    return r;
}

/// First l rows of the circulant matrix of u; row i is u cyclically
/// right-shifted by i positions.
inline ExtMatrix partial_circulant(const ExtVector& u, std::size_t l) {
    const std::size_t n = u.size();
    if (l < 1 || l > n) throw std::invalid_argument("partial circulant row count out of range");
    ExtMatrix G(u.field(), l, n);
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < n; ++j) G.at(i, j) = u[(j + n - i) % n];
    return G;
}

// ---- serialization: two u32 LE dimensions, then entries row-major ----

inline void append_matrix(ByteWriter& w, const ExtMatrix& M) {
    w.u32(static_cast<std::uint32_t>(M.rows()));
    w.u32(static_cast<std::uint32_t>(M.cols()));
    for (std::size_t i = 0; i < M.rows(); ++i)
        for (std::size_t j = 0; j < M.cols(); ++j) M.at(i, j).append_bytes(w.out);
}

inline ExtMatrix read_matrix(ByteReader& r, const FieldParams& field) {
    std::uint32_t rows = r.u32();
    std::uint32_t cols = r.u32();
    ExtMatrix M(field, rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j)
            M.at(i, j) = FieldElement::from_bytes(field, r.take(field.element_bytes()));
    return M;
}

/// Vectors serialize as 1 x n matrices.
inline void append_vector(ByteWriter& w, const ExtVector& v) {
    w.u32(1);
    w.u32(static_cast<std::uint32_t>(v.size()));
    for (std::size_t i = 0; i < v.size(); ++i) v[i].append_bytes(w.out);
}

inline ExtVector read_vector(ByteReader& r, const FieldParams& field) {
    if (r.u32() != 1) throw format_error("expected a row vector");
    std::uint32_t n = r.u32();
    std::vector<FieldElement> e;
    e.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        e.push_back(FieldElement::from_bytes(field, r.take(field.element_bytes())));
    return ExtVector(field, std::move(e));
}

}  // namespace mcnie2
