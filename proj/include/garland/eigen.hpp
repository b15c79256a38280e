#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "garland/errors.hpp"
#include "garland/matrix.hpp"

namespace garland {

// Cyclic Jacobi for dense symmetric matrices. Sweeps rotate every
// off-diagonal pair in row order; converged when the off-diagonal Frobenius
// norm drops below `tol`. Values only unless `vectors` is supplied.
inline bool jacobi_eigen(Matrix<double> a, std::vector<double>& values,
                         Matrix<double>* vectors = nullptr, int maxSweeps = 100,
                         double tol = 1e-12) {
    const std::size_t n = a.rows();
    if (vectors) {
        *vectors = Matrix<double>(n, n, 0.0);
        for (std::size_t i = 0; i < n; ++i) (*vectors)(i, i) = 1.0;
    }
    auto offNorm = [&]() {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) s += a(i, j) * a(i, j);
        return std::sqrt(2.0 * s);
    };
    bool converged = (n < 2) || offNorm() < tol;
    for (int sweep = 0; sweep < maxSweeps && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                double t = 1.0 / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                if (theta < 0.0) t = -t;
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
                if (vectors) {
                    for (std::size_t k = 0; k < n; ++k) {
                        const double vkp = (*vectors)(k, p), vkq = (*vectors)(k, q);
                        (*vectors)(k, p) = c * vkp - s * vkq;
                        (*vectors)(k, q) = s * vkp + c * vkq;
                    }
                }
            }
        }
        converged = offNorm() < tol;
    }
    values.resize(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = a(i, i);
    if (vectors) {
        // Sort ascending, permuting vector columns alongside.
        std::vector<std::size_t> order(n);
        for (std::size_t i = 0; i < n; ++i) order[i] = i;
        std::sort(order.begin(), order.end(),
                  [&](std::size_t x, std::size_t y) { return values[x] < values[y]; });
        std::vector<double> sorted(n);
        Matrix<double> cols(n, n);
        for (std::size_t j = 0; j < n; ++j) {
            sorted[j] = values[order[j]];
            for (std::size_t i = 0; i < n; ++i) cols(i, j) = (*vectors)(i, order[j]);
        }
        values = sorted;
        *vectors = cols;
    } else {
        std::sort(values.begin(), values.end());
    }
    return converged;
}

inline std::vector<double> symmetric_eigenvalues(const Matrix<double>& a, int maxSweeps = 100,
                                                 double tol = 1e-12) {
    std::vector<double> values;
    if (!jacobi_eigen(a, values, nullptr, maxSweeps, tol))
        throw ConvergenceError("jacobi eigensolver did not converge within the sweep cap");
    return values;
}

// Orthonormal basis of the hyperplane orthogonal to v (Householder
// reflection columns 2..n).
inline Matrix<double> hyperplane_basis(const std::vector<double>& v) {
    const std::size_t n = v.size();
    double norm = 0.0;
    for (double x : v) norm += x * x;
    norm = std::sqrt(norm);
    std::vector<double> u = v;
    u[0] += (u[0] >= 0.0 ? norm : -norm);
    double unorm2 = 0.0;
    for (double x : u) unorm2 += x * x;
    Matrix<double> basis(n, n - 1);
    for (std::size_t j = 1; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double hij = (i == j ? 1.0 : 0.0) - 2.0 * u[i] * u[j] / unorm2;
            basis(i, j - 1) = hij;
        }
    }
    return basis;
}

// Smallest eigenvalue of the form Q restricted to the orthogonal complement
// of v. Returns +inf when the complement is trivial.
inline double min_eigenvalue_on_complement(const Matrix<double>& q, const std::vector<double>& v) {
    const std::size_t n = q.rows();
    if (n <= 1) return std::numeric_limits<double>::infinity();
    const Matrix<double> u = hyperplane_basis(v);
    const Matrix<double> reduced = u.transposed() * q * u;
    return symmetric_eigenvalues(reduced).front();
}

} // namespace garland
