#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nfkit/arith.hpp"
#include "nfkit/errors.hpp"

namespace nfkit {

/// Dense row-major matrix over an exact ring.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T const& fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    T const& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<T> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
    std::span<T const> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

    std::vector<T> row_vector(std::size_t i) const
    {
        auto r = row(i);
        return {r.begin(), r.end()};
    }

    void append_row(std::span<T const> r)
    {
        if (rows_ == 0 && cols_ == 0) cols_ = r.size();
        if (r.size() != cols_) throw DomainError("row length mismatch");
        data_.insert(data_.end(), r.begin(), r.end());
        ++rows_;
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

    void swap_cols(std::size_t a, std::size_t b)
    {
        if (a == b) return;
        for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transpose() const
    {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool operator==(Matrix const& o) const
    {
        return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(Matrix<T> const& a, Matrix<T> const& b)
{
    if (a.cols() != b.rows()) throw DomainError("matrix dimension mismatch");
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            if (a(i, k) == 0) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += a(i, k) * b(k, j);
        }
    return c;
}

/// Row vector times matrix.
template <class T>
std::vector<T> operator*(std::vector<T> const& v, Matrix<T> const& m)
{
    if (v.size() != m.rows()) throw DomainError("vector/matrix dimension mismatch");
    std::vector<T> out(m.cols(), T(0));
    for (std::size_t i = 0; i < m.rows(); ++i) {
        if (v[i] == 0) continue;
        for (std::size_t j = 0; j < m.cols(); ++j) out[j] += v[i] * m(i, j);
    }
    return out;
}

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(IntMatrix const& m);

/// Lower-triangular row Hermite normal form of a full-column-rank lattice:
/// positive diagonal, entries left of the diagonal reduced into [0, diagonal).
/// The result is square (cols x cols). Throws DomainError on rank deficiency.
IntMatrix hnf(IntMatrix const& generators);

Integer det(IntMatrix const& m);
Rational det(RatMatrix const& m);

/// Inverse of a square rational matrix; DomainError when singular.
RatMatrix inverse(RatMatrix const& m);

std::size_t rank(RatMatrix const& m);

/// Solve x * A = b for a row vector x (A square, invertible).
std::vector<Rational> solve_left(RatMatrix const& a, std::vector<Rational> const& b);

/// Basis (as rows, entries in [0, p)) of the left kernel {x : x*M = 0 mod p}.
IntMatrix left_kernel_mod_p(IntMatrix const& m, Integer const& p);

/// Solve x * H = v for a lower-triangular HNF basis H (integral rows).
/// Returns false when the solution is not integral.
bool solve_triangular_integral(IntMatrix const& h, std::vector<Integer> const& v,
                               std::vector<Integer>& x);

}  // namespace nfkit
