#pragma once

#include <cmath>
#include <cstddef>
#include <numeric>
#include <vector>

#include "cframe/errors.hpp"
#include "cframe/matrix.hpp"
#include "cframe/tolerances.hpp"

namespace cframe {

// Eigenvalues ascending; eigenvectors are the matching orthonormal columns.
template <ScalarType T>
struct EigenDecomposition {
    std::vector<double> eigenvalues;
    Matrix<T> eigenvectors;
};

namespace detail {

inline double off_diag_fro(const Matrix<double>& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += abs2(a(i, j));
    return std::sqrt(acc);
}
inline double off_diag_fro(const Matrix<Complex>& a) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            if (i != j) acc += abs2(a(i, j));
    return std::sqrt(acc);
}

// Normalize column phases so the first non-negligible component is positive
// real, then sort ascending by eigenvalue. Deterministic for identical input.
template <ScalarType T>
void canonicalize(std::vector<double>& vals, Matrix<T>& vecs) {
    const std::size_t n = vals.size();
    for (std::size_t j = 0; j < n; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            const double a = std::sqrt(abs2(vecs(i, j)));
            if (a > 1e-12) {
                const T phase = vecs(i, j) * (1.0 / a);
                for (std::size_t k = 0; k < n; ++k) vecs(k, j) *= conj_s(phase);
                break;
            }
        }
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return vals[a] < vals[b]; });
    std::vector<double> sorted_vals(n);
    Matrix<T> sorted_vecs(n, n);
    for (std::size_t j = 0; j < n; ++j) {
        sorted_vals[j] = vals[order[j]];
        for (std::size_t i = 0; i < n; ++i) sorted_vecs(i, j) = vecs(i, order[j]);
    }
    vals = std::move(sorted_vals);
    vecs = std::move(sorted_vecs);
}

} // namespace detail

// Cyclic Jacobi for self-adjoint matrices. Fixed sweep order, so repeated
// runs on the same input give bit-identical output.
template <ScalarType T>
EigenDecomposition<T> hermitian_eig(const Matrix<T>& m) {
    if (!m.square()) throw DimMismatch("hermitian_eig requires a square matrix");
    if (max_abs_diff(m, adjoint(m)) > tol::hermitian_tol(m))
        throw NotSelfAdjoint("matrix is not self-adjoint within tolerance");

    const std::size_t n = m.rows();
    Matrix<T> a = hermitian_part(m); // exact symmetrization of the working copy
    Matrix<T> q = Matrix<T>::identity(n);

    const double fro = a.fro_norm();
    std::vector<double> vals(n);
    if (fro == 0.0 || n == 1) {
        for (std::size_t i = 0; i < n; ++i) vals[i] = real_s(a(i, i));
        detail::canonicalize(vals, q);
        return {std::move(vals), std::move(q)};
    }

    const double threshold = 1e-15 * fro;
    const int max_sweeps = 60;
    int sweep = 0;
    while (detail::off_diag_fro(a) > threshold) {
        if (++sweep > max_sweeps) throw NoConvergence("Jacobi sweep budget exhausted");
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t qq = p + 1; qq < n; ++qq) {
                const double mag = std::sqrt(abs2(a(p, qq)));
                if (mag == 0.0) continue;
                const double app = real_s(a(p, p));
                const double aqq = real_s(a(qq, qq));
                // Entries this small cannot move the spectrum at working precision.
                if (std::abs(app) + 100.0 * mag == std::abs(app) &&
                    std::abs(aqq) + 100.0 * mag == std::abs(aqq)) {
                    a(p, qq) = T{};
                    a(qq, p) = T{};
                    continue;
                }
                const T u = a(p, qq) * (1.0 / mag); // unit phase of the pivot
                const double theta = (aqq - app) / (2.0 * mag);
                double t;
                if (std::abs(theta) > 1e154)
                    t = 1.0 / (2.0 * theta);
                else
                    t = (theta >= 0.0 ? 1.0 : -1.0) /
                        (std::abs(theta) + std::sqrt(1.0 + theta * theta));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;

                a(p, p) = T{app * c * c - 2.0 * mag * s * c + aqq * s * s};
                a(qq, qq) = T{app * s * s + 2.0 * mag * s * c + aqq * c * c};
                a(p, qq) = T{};
                a(qq, p) = T{};
                for (std::size_t k = 0; k < n; ++k) {
                    if (k == p || k == qq) continue;
                    const T akp = a(k, p);
                    const T akq = a(k, qq);
                    a(k, p) = c * akp - s * conj_s(u) * akq;
                    a(k, qq) = s * u * akp + c * akq;
                    a(p, k) = conj_s(a(k, p));
                    a(qq, k) = conj_s(a(k, qq));
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const T qkp = q(k, p);
                    const T qkq = q(k, qq);
                    q(k, p) = c * qkp - s * conj_s(u) * qkq;
                    q(k, qq) = s * u * qkp + c * qkq;
                }
            }
        }
    }

    for (std::size_t i = 0; i < n; ++i) vals[i] = real_s(a(i, i));
    detail::canonicalize(vals, q);
    return {std::move(vals), std::move(q)};
}

// Q diag(f(lambda_k)) Q^*, symmetrized.
template <ScalarType T, class Fn>
Matrix<T> spectral_map(const EigenDecomposition<T>& eig, Fn&& f) {
    const std::size_t n = eig.eigenvalues.size();
    Matrix<T> scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < n; ++j) {
        const double fj = f(eig.eigenvalues[j]);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= fj;
    }
    return hermitian_part(scaled * adjoint(eig.eigenvectors));
}

template <ScalarType T>
Matrix<T> operator_power(const Matrix<T>& m, double beta) {
    if (beta == 0.0) return Matrix<T>::identity(m.rows());
    if (beta == 1.0) return m;
    const auto eig = hermitian_eig(m);
    const bool nonneg_integer = beta > 0.0 && beta == std::floor(beta);
    if (!nonneg_integer) {
        const double floor_val = tol::psd_tol(m);
        if (eig.eigenvalues.front() <= floor_val)
            throw NotPositive("fractional or negative power of a non-positive-definite matrix");
    }
    return spectral_map(eig, [beta](double x) { return std::pow(x, beta); });
}

template <ScalarType T>
T trace(const Matrix<T>& m) {
    T acc{};
    for (std::size_t i = 0; i < m.rows(); ++i) acc += m(i, i);
    return acc;
}

struct ClassifyFlags {
    bool self_adjoint = false;
    bool positive_semidefinite = false;
    bool positive_definite = false;
    bool invertible = false;
    bool normal = false;
    bool unitary = false;
};

template <ScalarType T>
ClassifyFlags classify(const Matrix<T>& m) {
    ClassifyFlags flags;
    const auto adj = adjoint(m);
    flags.self_adjoint = max_abs_diff(m, adj) <= tol::hermitian_tol(m);

    const auto mmadj = m * adj;
    const auto madjm = adj * m;
    flags.normal = max_abs_diff(mmadj, madjm) <= tol::normal_tol * std::max(1.0, mmadj.max_norm());
    flags.unitary = max_abs_diff(madjm, Matrix<T>::identity(m.rows())) <= tol::eig_tol;

    // sigma_min via the spectrum of M^* M
    const auto gram_eig = hermitian_eig(madjm);
    const double sigma_min = std::sqrt(std::max(0.0, gram_eig.eigenvalues.front()));
    flags.invertible = sigma_min > tol::singular_tol(m);

    if (flags.self_adjoint) {
        const auto eig = hermitian_eig(m);
        const double lambda_min = eig.eigenvalues.front();
        flags.positive_semidefinite = lambda_min >= -tol::psd_tol(m);
        flags.positive_definite = lambda_min > tol::psd_tol(m);
    }
    return flags;
}

// Gauss-Jordan with partial pivoting, for controllers that need not be
// self-adjoint.
template <ScalarType T>
Matrix<T> general_inverse(const Matrix<T>& m) {
    if (!m.square()) throw DimMismatch("inverse requires a square matrix");
    const std::size_t n = m.rows();
    Matrix<T> a = m;
    Matrix<T> inv = Matrix<T>::identity(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        double best = std::sqrt(abs2(a(col, col)));
        for (std::size_t r = col + 1; r < n; ++r) {
            const double v = std::sqrt(abs2(a(r, col)));
            if (v > best) {
                best = v;
                pivot = r;
            }
        }
        if (best <= tol::singular_tol(m)) throw SingularMatrix("matrix is numerically singular");
        if (pivot != col)
            for (std::size_t j = 0; j < n; ++j) {
                std::swap(a(col, j), a(pivot, j));
                std::swap(inv(col, j), inv(pivot, j));
            }
        const T d = a(col, col);
        for (std::size_t j = 0; j < n; ++j) {
            a(col, j) = a(col, j) / d;
            inv(col, j) = inv(col, j) / d;
        }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            const T factor = a(r, col);
            if (factor == T{}) continue;
            for (std::size_t j = 0; j < n; ++j) {
                a(r, j) -= factor * a(col, j);
                inv(r, j) -= factor * inv(col, j);
            }
        }
    }
    return inv;
}

} // namespace cframe
