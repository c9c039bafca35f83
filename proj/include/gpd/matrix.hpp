#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <ostream>
#include <vector>

#include "gpd/error.hpp"
#include "gpd/field.hpp"

namespace gpd {

/// Dense row-major matrix over an exact field.
template <Field F>
class Matrix {
  public:
    using field_type = F;
    using value_type = typename F::value_type;

    Matrix(F field, std::size_t rows, std::size_t cols)
        : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, field_.zero()) {}

    static Matrix identity(const F& field, std::size_t n) {
        Matrix m(field, n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
        return m;
    }

    static Matrix from_ints(const F& field, std::initializer_list<std::initializer_list<std::int64_t>> rows) {
        std::size_t r = rows.size(), c = r ? rows.begin()->size() : 0;
        Matrix m(field, r, c);
        std::size_t i = 0;
        for (const auto& row : rows) {
            require(row.size() == c, "ragged matrix literal");
            std::size_t j = 0;
            for (auto v : row) m(i, j++) = field.from_int(v);
            ++i;
        }
        return m;
    }

    /// Column vector.
    static Matrix column(const F& field, const std::vector<value_type>& entries) {
        Matrix m(field, entries.size(), 1);
        for (std::size_t i = 0; i < entries.size(); ++i) m(i, 0) = entries[i];
        return m;
    }

    const F& field() const { return field_; }
    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool is_square() const { return rows_ == cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const value_type& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
    const std::vector<value_type>& data() const { return data_; }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [&](const value_type& v) { return field_.is_zero(v); });
    }

    bool operator==(const Matrix& o) const {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

    Matrix operator*(const Matrix& o) const {
        require(cols_ == o.rows_, "matrix product dimension mismatch");
        Matrix out(field_, rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                const auto& a = (*this)(i, k);
                if (field_.is_zero(a)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j)
                    if (!field_.is_zero(o(k, j))) out(i, j) = field_.add(out(i, j), field_.mul(a, o(k, j)));
            }
        return out;
    }

    Matrix operator+(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix sum dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.add(data_[i], o.data_[i]);
        return out;
    }

    Matrix operator-(const Matrix& o) const {
        require(rows_ == o.rows_ && cols_ == o.cols_, "matrix difference dimension mismatch");
        Matrix out = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = field_.sub(data_[i], o.data_[i]);
        return out;
    }

    Matrix scaled(const value_type& s) const {
        Matrix out = *this;
        for (auto& v : out.data_) v = field_.mul(v, s);
        return out;
    }

    Matrix transpose() const {
        Matrix out(field_, cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
        require(r0 + nr <= rows_ && c0 + nc <= cols_, "block out of range");
        Matrix out(field_, nr, nc);
        for (std::size_t i = 0; i < nr; ++i)
            for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
        return out;
    }

    void set_block(std::size_t r0, std::size_t c0, const Matrix& b) {
        require(r0 + b.rows_ <= rows_ && c0 + b.cols_ <= cols_, "block out of range");
        for (std::size_t i = 0; i < b.rows_; ++i)
            for (std::size_t j = 0; j < b.cols_; ++j) (*this)(r0 + i, c0 + j) = b(i, j);
    }

    Matrix col(std::size_t j) const { return block(0, j, rows_, 1); }

    /// Selects the given columns in order.
    Matrix cols_at(const std::vector<std::size_t>& idx) const {
        Matrix out(field_, rows_, idx.size());
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < idx.size(); ++j) out(i, j) = (*this)(i, idx[j]);
        return out;
    }

    /// Row-major flattening as a column vector.
    Matrix vectorized() const {
        Matrix out(field_, data_.size(), 1);
        out.data_ = data_;
        return out;
    }

    static Matrix from_vectorized(const Matrix& v, std::size_t rows, std::size_t cols) {
        require(v.rows_ * v.cols_ == rows * cols, "reshape size mismatch");
        Matrix out(v.field_, rows, cols);
        out.data_ = v.data_;
        return out;
    }

  private:
    F field_;
    std::size_t rows_, cols_;
    std::vector<value_type> data_;
};

template <Field F>
Matrix<F> hstack(const F& field, std::size_t rows, const std::vector<Matrix<F>>& parts) {
    std::size_t cols = 0;
    for (const auto& p : parts) {
        require(p.rows() == rows, "hstack row mismatch");
        cols += p.cols();
    }
    Matrix<F> out(field, rows, cols);
    std::size_t c = 0;
    for (const auto& p : parts) {
        out.set_block(0, c, p);
        c += p.cols();
    }
    return out;
}

template <Field F>
Matrix<F> vstack(const F& field, std::size_t cols, const std::vector<Matrix<F>>& parts) {
    std::size_t rows = 0;
    for (const auto& p : parts) {
        require(p.cols() == cols, "vstack column mismatch");
        rows += p.rows();
    }
    Matrix<F> out(field, rows, cols);
    std::size_t r = 0;
    for (const auto& p : parts) {
        out.set_block(r, 0, p);
        r += p.rows();
    }
    return out;
}

/// Block-diagonal sum.
template <Field F>
Matrix<F> block_diagonal(const F& field, const std::vector<Matrix<F>>& parts) {
    std::size_t r = 0, c = 0;
    for (const auto& p : parts) r += p.rows(), c += p.cols();
    Matrix<F> out(field, r, c);
    r = c = 0;
    for (const auto& p : parts) {
        out.set_block(r, c, p);
        r += p.rows();
        c += p.cols();
    }
    return out;
}

template <Field F>
std::ostream& operator<<(std::ostream& os, const Matrix<F>& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows(); ++i) {
        os << (i ? ", [" : "[");
        for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? ", " : "") << m.field().to_string(m(i, j));
        os << ']';
    }
    return os << ']';
}

template <Field F>
struct RrefResult {
    Matrix<F> reduced;
    std::size_t rank;
    std::vector<std::size_t> pivot_cols;
};

/// Gauss-Jordan elimination to the unique reduced row-echelon form.
template <Field F>
RrefResult<F> rref(Matrix<F> m) {
    const F& f = m.field();
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::size_t> pivots;
    std::vector<std::size_t> support;
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t piv = r;
        while (piv < rows && f.is_zero(m(piv, c))) ++piv;
        if (piv == rows) continue;
        if (piv != r)
            for (std::size_t j = c; j < cols; ++j) std::swap(m(r, j), m(piv, j));
        auto scale = f.inv(m(r, c));
        support.clear();
        for (std::size_t j = c; j < cols; ++j)
            if (!f.is_zero(m(r, j))) {
                m(r, j) = f.mul(m(r, j), scale);
                support.push_back(j);
            }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || f.is_zero(m(i, c))) continue;
            auto factor = m(i, c);
            for (auto j : support) m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
        }
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), r, std::move(pivots)};
}

template <Field F>
std::size_t rank(const Matrix<F>& m) {
    return rref(m).rank;
}

/// Null-space basis as column vectors: one per free column, ascending, with the
/// free entry 1 and pivot entries back-substituted.
template <Field F>
std::vector<Matrix<F>> kernel_basis(const Matrix<F>& m) {
    const F& f = m.field();
    auto [red, rk, pivots] = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : pivots) is_pivot[p] = true;
    std::vector<Matrix<F>> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (is_pivot[free]) continue;
        Matrix<F> v(f, m.cols(), 1);
        v(free, 0) = f.one();
        for (std::size_t r = 0; r < rk; ++r) v(pivots[r], 0) = f.neg(red(r, free));
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Kernel basis packed as the columns of one matrix.
template <Field F>
Matrix<F> kernel_matrix(const Matrix<F>& m) {
    return hstack(m.field(), m.cols(), kernel_basis(m));
}

/// One particular solution of a x = b with free variables set to zero, or
/// nothing when the system is inconsistent.
template <Field F>
std::optional<Matrix<F>> solve(const Matrix<F>& a, const Matrix<F>& b) {
    require(a.rows() == b.rows(), "solve: row count mismatch between a and b");
    const F& f = a.field();
    auto [red, rk, pivots] = rref(hstack(f, a.rows(), {a, b}));
    Matrix<F> x(f, a.cols(), b.cols());
    for (std::size_t r = 0; r < rk; ++r) {
        if (pivots[r] >= a.cols()) return std::nullopt;
        for (std::size_t j = 0; j < b.cols(); ++j) x(pivots[r], j) = red(r, a.cols() + j);
    }
    return x;
}

template <Field F>
std::optional<Matrix<F>> invert(const Matrix<F>& m) {
    require(m.is_square(), "invert: matrix is not square");
    const std::size_t n = m.rows();
    auto [red, rk, pivots] = rref(hstack(m.field(), n, {m, Matrix<F>::identity(m.field(), n)}));
    if (rk < n || (n > 0 && pivots[n - 1] >= n)) return std::nullopt;
    return red.block(0, n, n, n);
}

/// Incrementally maintained reduced echelon basis of a row space.
template <Field F>
class EchelonBasis {
  public:
    using value_type = typename F::value_type;

    EchelonBasis(F field, std::size_t width) : field_(std::move(field)), width_(width) {}

    std::size_t rank() const { return rows_.size(); }
    std::size_t width() const { return width_; }

    /// Reduces v against the current basis in place; returns the pivot column of
    /// the remainder, or nothing if v lies in the span.
    std::optional<std::size_t> reduce(std::vector<value_type>& v) const {
        for (const auto& [pc, row] : rows_) {
            if (field_.is_zero(v[pc])) continue;
            auto factor = v[pc];
            for (std::size_t j = 0; j < width_; ++j)
                if (!field_.is_zero(row[j])) v[j] = field_.sub(v[j], field_.mul(factor, row[j]));
        }
        for (std::size_t j = 0; j < width_; ++j)
            if (!field_.is_zero(v[j])) return j;
        return std::nullopt;
    }

    bool contains(std::vector<value_type> v) const { return !reduce(v).has_value(); }

    /// Adds v to the span; returns false when it was already there.
    bool insert(std::vector<value_type> v) {
        require(v.size() == width_, "echelon insert width mismatch");
        auto pc = reduce(v);
        if (!pc) return false;
        auto scale = field_.inv(v[*pc]);
        for (auto& x : v) x = field_.mul(x, scale);
        for (auto& [opc, row] : rows_) {
            if (field_.is_zero(row[*pc])) continue;
            auto factor = row[*pc];
            for (std::size_t j = 0; j < width_; ++j)
                if (!field_.is_zero(v[j])) row[j] = field_.sub(row[j], field_.mul(factor, v[j]));
        }
        rows_.emplace(*pc, std::move(v));
        return true;
    }

    bool insert_column(const Matrix<F>& m, std::size_t j) {
        std::vector<value_type> v(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) v[i] = m(i, j);
        return insert(std::move(v));
    }

    /// Basis vectors (ordered by pivot) as matrix columns.
    Matrix<F> as_columns() const {
        Matrix<F> out(field_, width_, rows_.size());
        std::size_t j = 0;
        for (const auto& [pc, row] : rows_) {
            for (std::size_t i = 0; i < width_; ++i) out(i, j) = row[i];
            ++j;
        }
        return out;
    }

  private:
    F field_;
    std::size_t width_;
    std::map<std::size_t, std::vector<value_type>> rows_;
};

/// Column-space basis (canonical: reduced echelon of the transposed span).
template <Field F>
Matrix<F> column_space(const Matrix<F>& m) {
    EchelonBasis<F> eb(m.field(), m.rows());
    for (std::size_t j = 0; j < m.cols(); ++j) eb.insert_column(m, j);
    return eb.as_columns();
}

}  // namespace gpd
