#pragma once

// Shared generators and independent oracles for the test suites. The oracles
// here (determinants by Laplace expansion, characteristic-polynomial
// bisection, closed-form moments) deliberately avoid the library's
// eigensolver and quadrature paths.

#include <cmath>
#include <random>
#include <vector>

#include "cframe/cframe.hpp"

namespace testsupport {

using cframe::Complex;
using cframe::Matrix;
using cframe::MeasureSpace;
using cframe::SampledFrame;
using cframe::Vector;

using Rng = std::mt19937_64;

inline double uniform_in(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <cframe::ScalarType T>
T random_scalar(Rng& rng, double lo = -1.0, double hi = 1.0) {
    if constexpr (cframe::is_complex_v<T>)
        return Complex(uniform_in(rng, lo, hi), uniform_in(rng, lo, hi));
    else
        return uniform_in(rng, lo, hi);
}

template <cframe::ScalarType T>
Vector<T> random_vector(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    Vector<T> v(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = random_scalar<T>(rng, lo, hi);
    return v;
}

template <cframe::ScalarType T>
Matrix<T> random_matrix(Rng& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    Matrix<T> m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = random_scalar<T>(rng, lo, hi);
    return m;
}

// Product of random plane rotations (and phases, for the complex field):
// orthogonal/unitary to machine precision by construction.
template <cframe::ScalarType T>
Matrix<T> random_unitary(Rng& rng, std::size_t n) {
    Matrix<T> q = Matrix<T>::identity(n);
    for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t r = p + 1; r < n; ++r) {
            const double theta = uniform_in(rng, 0.0, 2.0 * M_PI);
            const double c = std::cos(theta), s = std::sin(theta);
            for (std::size_t i = 0; i < n; ++i) {
                const T a = q(i, p), b = q(i, r);
                q(i, p) = c * a - s * b;
                q(i, r) = s * a + c * b;
            }
        }
    }
    if constexpr (cframe::is_complex_v<T>) {
        for (std::size_t j = 0; j < n; ++j) {
            const double phi = uniform_in(rng, 0.0, 2.0 * M_PI);
            const Complex phase(std::cos(phi), std::sin(phi));
            for (std::size_t i = 0; i < n; ++i) q(i, j) *= phase;
        }
    }
    return q;
}

// Q diag(spectrum) Q^* for a random Q.
template <cframe::ScalarType T>
Matrix<T> random_spd(Rng& rng, std::size_t n, double lo = 0.5, double hi = 2.0) {
    const auto q = random_unitary<T>(rng, n);
    Matrix<T> scaled = q;
    for (std::size_t j = 0; j < n; ++j) {
        const double d = uniform_in(rng, lo, hi);
        for (std::size_t i = 0; i < n; ++i) scaled(i, j) *= d;
    }
    return cframe::hermitian_part(scaled * cframe::adjoint(q));
}

// Random frame with a controlled condition number (resampled until the
// frame operator is comfortably non-degenerate).
template <cframe::ScalarType T>
SampledFrame<T> random_frame(Rng& rng, std::size_t dim, std::size_t nodes,
                             double max_condition = 50.0, bool quadrature_measure = false) {
    for (int attempt = 0; attempt < 64; ++attempt) {
        MeasureSpace space = quadrature_measure
                                 ? cframe::gauss_legendre(0.0, 1.0, nodes)
                                 : cframe::counting(nodes);
        // scale so sample norms stay O(1) after weighting
        const double scale = quadrature_measure ? std::sqrt(static_cast<double>(nodes)) : 1.0;
        std::vector<Vector<T>> samples;
        samples.reserve(nodes);
        for (std::size_t i = 0; i < nodes; ++i)
            samples.push_back(random_vector<T>(rng, dim, -scale, scale));
        auto frame = cframe::make_frame(std::move(space), std::move(samples));
        const auto fa = cframe::analyze(frame);
        if (fa.lower > 0.0 && fa.upper / fa.lower <= max_condition) return frame;
    }
    throw std::runtime_error("random_frame: no well-conditioned draw in 64 attempts");
}

template <cframe::ScalarType T>
SampledFrame<T> onb_frame(std::size_t n) {
    std::vector<Vector<T>> samples;
    for (std::size_t k = 0; k < n; ++k) {
        Vector<T> e(n);
        e[k] = T{1};
        samples.push_back(e);
    }
    return cframe::make_frame(cframe::counting(n), std::move(samples));
}

inline SampledFrame<double> moment_frame(std::size_t order = 8) {
    auto ms = cframe::gauss_legendre(0.0, 1.0, order);
    std::vector<Vector<double>> samples;
    for (double s : ms.nodes) samples.push_back(Vector<double>{1.0, s});
    return cframe::make_frame(std::move(ms), std::move(samples));
}

// ---- independent oracles ----

// Laplace-expansion determinant; exponential cost, fine for n <= 6.
template <cframe::ScalarType T>
T det_oracle(const Matrix<T>& m) {
    const std::size_t n = m.rows();
    if (n == 1) return m(0, 0);
    T acc{};
    double sign = 1.0;
    for (std::size_t k = 0; k < n; ++k) {
        Matrix<T> minor(n - 1, n - 1);
        for (std::size_t i = 1; i < n; ++i) {
            std::size_t jj = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == k) continue;
                minor(i - 1, jj++) = m(i, j);
            }
        }
        acc += sign * m(0, k) * det_oracle(minor);
        sign = -sign;
    }
    return acc;
}

// det(M - lambda I), for the characteristic-polynomial root oracle.
inline double char_poly(const Matrix<double>& m, double lambda) {
    Matrix<double> shifted = m;
    for (std::size_t i = 0; i < m.rows(); ++i) shifted(i, i) -= lambda;
    return det_oracle(shifted);
}

// Bisection on the characteristic polynomial over [lo, hi]; requires a sign
// change. Independent of the Jacobi path.
inline double char_poly_root(const Matrix<double>& m, double lo, double hi) {
    double flo = char_poly(m, lo);
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fmid = char_poly(m, mid);
        if ((flo <= 0.0) == (fmid <= 0.0)) {
            lo = mid;
            flo = fmid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

// closed form for the integral of s^d over [a, b]
inline double monomial_integral(double a, double b, int d) {
    return (std::pow(b, d + 1) - std::pow(a, d + 1)) / (d + 1);
}

} // namespace testsupport
