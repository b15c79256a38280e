#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "garland/rational.hpp"

namespace garland {

// Dense row-major matrix over an arbitrary scalar. Used with Rational and
// BigInt for the exact layer and with double for the spectral layer.
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    bool operator==(const Matrix&) const = default;

    Matrix transposed() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        for (const T& v : data_)
            if (v != T(0)) return false;
        return true;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b) return;
        for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
    }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
    assert(a.cols() == b.rows());
    Matrix<T> c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const T& aik = a(i, k);
            if (aik == T(0)) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

template <class T, class U>
Matrix<U> convert_matrix(const Matrix<T>& a, U (*conv)(const T&)) {
    Matrix<U> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = conv(a(i, j));
    return out;
}

inline Matrix<double> to_double_matrix(const Matrix<Rational>& a) {
    Matrix<double> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j) = to_double(a(i, j));
    return out;
}

// Fraction-free (Bareiss) elimination; returns the rank of an integer
// matrix. Division in the update step is exact.
inline std::size_t bareiss_rank(Matrix<BigInt> m) {
    const std::size_t rows = m.rows(), cols = m.cols();
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        m.swap_rows(rank, pivot);
        const BigInt piv = m(rank, col);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < cols; ++j)
                m(i, j) = (m(i, j) * piv - m(i, col) * m(rank, j)) / prev;
            m(i, col) = 0;
        }
        prev = piv;
        ++rank;
    }
    return rank;
}

inline Matrix<BigInt> clear_denominators(const Matrix<Rational>& a) {
    Matrix<BigInt> out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        BigInt l = 1;
        for (std::size_t j = 0; j < a.cols(); ++j) l = lcm(l, denominator(a(i, j)));
        for (std::size_t j = 0; j < a.cols(); ++j)
            out(i, j) = numerator(a(i, j)) * (l / denominator(a(i, j)));
    }
    return out;
}

inline std::size_t rank_mod(const Matrix<BigInt>& a, uint64_t p) {
    const std::size_t rows = a.rows(), cols = a.cols();
    std::vector<std::vector<uint64_t>> m(rows, std::vector<uint64_t>(cols));
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) m[i][j] = residue_mod(a(i, j), p);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        const uint64_t inv = inv_mod(m[rank][col], p);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (m[i][col] == 0) continue;
            const uint64_t f = mul_mod(m[i][col], inv, p);
            for (std::size_t j = col; j < cols; ++j) {
                const uint64_t sub = mul_mod(f, m[rank][j], p);
                m[i][j] = (m[i][j] >= sub) ? m[i][j] - sub : m[i][j] + p - sub;
            }
        }
        ++rank;
    }
    return rank;
}

inline std::size_t matrix_rank(const Matrix<Rational>& a, const RankMode& mode) {
    const Matrix<BigInt> scaled = clear_denominators(a);
    if (mode.modular) return rank_mod(scaled, mode.prime);
    return bareiss_rank(scaled);
}

inline std::size_t matrix_rank(const Matrix<BigInt>& a, const RankMode& mode) {
    if (mode.modular) return rank_mod(a, mode.prime);
    return bareiss_rank(a);
}

// Basis of the right kernel, columns of the result. Plain rational
// Gauss-Jordan; instances stay small enough that pivot growth is harmless.
inline Matrix<Rational> kernel_basis(const Matrix<Rational>& a) {
    const std::size_t rows = a.rows(), cols = a.cols();
    Matrix<Rational> m = a;
    std::vector<std::size_t> pivotCol;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m(pivot, col) == 0) ++pivot;
        if (pivot == rows) continue;
        m.swap_rows(rank, pivot);
        const Rational inv = Rational(1) / m(rank, col);
        for (std::size_t j = col; j < cols; ++j) m(rank, j) *= inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || m(i, col) == 0) continue;
            const Rational f = m(i, col);
            for (std::size_t j = col; j < cols; ++j) m(i, j) -= f * m(rank, j);
        }
        pivotCol.push_back(col);
        ++rank;
    }
    std::vector<bool> isPivot(cols, false);
    for (std::size_t c : pivotCol) isPivot[c] = true;
    Matrix<Rational> basis(cols, cols - rank);
    std::size_t out = 0;
    for (std::size_t freeCol = 0; freeCol < cols; ++freeCol) {
        if (isPivot[freeCol]) continue;
        basis(freeCol, out) = 1;
        for (std::size_t r = 0; r < rank; ++r) basis(pivotCol[r], out) = -m(r, freeCol);
        ++out;
    }
    return basis;
}

inline Matrix<Rational> vstack(const Matrix<Rational>& top, const Matrix<Rational>& bottom) {
    assert(top.cols() == bottom.cols());
    Matrix<Rational> out(top.rows() + bottom.rows(), top.cols());
    for (std::size_t i = 0; i < top.rows(); ++i)
        for (std::size_t j = 0; j < top.cols(); ++j) out(i, j) = top(i, j);
    for (std::size_t i = 0; i < bottom.rows(); ++i)
        for (std::size_t j = 0; j < bottom.cols(); ++j) out(top.rows() + i, j) = bottom(i, j);
    return out;
}

inline Matrix<Rational> hstack(const Matrix<Rational>& left, const Matrix<Rational>& right) {
    assert(left.rows() == right.rows());
    Matrix<Rational> out(left.rows(), left.cols() + right.cols());
    for (std::size_t i = 0; i < left.rows(); ++i) {
        for (std::size_t j = 0; j < left.cols(); ++j) out(i, j) = left(i, j);
        for (std::size_t j = 0; j < right.cols(); ++j) out(i, left.cols() + j) = right(i, j);
    }
    return out;
}

} // namespace garland
