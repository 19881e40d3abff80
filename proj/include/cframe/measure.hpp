#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "cframe/errors.hpp"

namespace cframe {

// Finite discretization of a measure space: the integral over the parameter
// domain becomes the exact weighted sum over the nodes. Frame identities then
// hold exactly for the sampled family; quadrature error only enters the
// correspondence with the ideal continuous family.
struct MeasureSpace {
    enum class Kind { quadrature, discrete };

    std::vector<double> nodes;
    std::vector<double> weights;
    Kind kind = Kind::discrete;
    std::string descriptor = "explicit";

    std::size_t size() const { return nodes.size(); }

    double total_mass() const {
        double acc = 0.0;
        for (double w : weights) acc += w;
        return acc;
    }

    template <class Fn>
    double integrate(Fn&& f) const {
        double acc = 0.0;
        for (std::size_t i = 0; i < nodes.size(); ++i) acc += weights[i] * f(nodes[i]);
        return acc;
    }

    bool same_as(const MeasureSpace& other) const {
        return nodes == other.nodes && weights == other.weights;
    }
};

namespace detail {

// P_n(x) and P_n'(x) by the three-term recurrence.
inline std::pair<double, double> legendre(int n, double x) {
    double p0 = 1.0, p1 = x;
    for (int k = 1; k < n; ++k) {
        const double p2 = ((2.0 * k + 1.0) * x * p1 - k * p0) / (k + 1.0);
        p0 = p1;
        p1 = p2;
    }
    const double dp = n * (x * p1 - p0) / (x * x - 1.0);
    return {p1, dp};
}

} // namespace detail

// Gauss-Legendre rule with `order` nodes on [a, b]; exact for polynomial
// integrands of degree <= 2*order - 1. Nodes from Newton iteration on the
// Legendre polynomial, mirrored about the midpoint so symmetric rules are
// bit-symmetric.
inline MeasureSpace gauss_legendre(double a, double b, std::size_t order) {
    if (!(a < b)) throw BadInterval("gauss_legendre requires a < b");
    if (order < 1) throw BadInterval("gauss_legendre requires order >= 1");

    const int n = static_cast<int>(order);
    std::vector<double> x(order), w(order);
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        // Chebyshev-like initial guess for the i-th root (descending in x).
        double root = std::cos(M_PI * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        bool converged = false;
        for (int it = 0; it < 100; ++it) {
            const auto [p, d] = detail::legendre(n, root);
            dp = d;
            const double step = p / d;
            root -= step;
            if (std::abs(step) <= 1e-15) {
                converged = true;
                break;
            }
        }
        if (!converged) throw NoConvergence("Legendre root iteration did not converge");
        const auto [p_final, d_final] = detail::legendre(n, root);
        (void)p_final;
        dp = d_final;
        const double weight = 2.0 / ((1.0 - root * root) * dp * dp);
        // root > 0 here; fill the symmetric pair.
        x[i] = -root;
        w[i] = weight;
        x[order - 1 - i] = root;
        w[order - 1 - i] = weight;
    }
    if (n % 2 == 1) {
        const auto [p, dp] = detail::legendre(n, 0.0);
        (void)p;
        x[order / 2] = 0.0;
        w[order / 2] = 2.0 / (dp * dp);
    }

    MeasureSpace ms;
    ms.kind = MeasureSpace::Kind::quadrature;
    ms.descriptor = "gauss[" + std::to_string(a) + "," + std::to_string(b) + "] order " +
                    std::to_string(order);
    const double mid = 0.5 * (a + b);
    const double halfwidth = 0.5 * (b - a);
    ms.nodes.resize(order);
    ms.weights.resize(order);
    for (std::size_t i = 0; i < order; ++i) {
        ms.nodes[i] = mid + halfwidth * x[i];
        ms.weights[i] = halfwidth * w[i];
    }
    return ms;
}

// Composite midpoint rule: nodes a + (i + 1/2) h, weights h = (b - a) / m.
inline MeasureSpace uniform(double a, double b, std::size_t m) {
    if (!(a < b)) throw BadInterval("uniform requires a < b");
    if (m < 1) throw BadInterval("uniform requires m >= 1");
    MeasureSpace ms;
    ms.kind = MeasureSpace::Kind::quadrature;
    ms.descriptor = "uniform[" + std::to_string(a) + "," + std::to_string(b) + "] order " +
                    std::to_string(m);
    const double h = (b - a) / static_cast<double>(m);
    ms.nodes.resize(m);
    ms.weights.assign(m, h);
    for (std::size_t i = 0; i < m; ++i) ms.nodes[i] = a + (static_cast<double>(i) + 0.5) * h;
    return ms;
}

// Point masses; integration is the exact finite sum.
inline MeasureSpace discrete(std::vector<double> points, std::vector<double> masses) {
    if (points.size() != masses.size())
        throw LengthMismatch("discrete measure needs equally many points and masses");
    if (points.empty()) throw LengthMismatch("discrete measure needs at least one point");
    for (double m : masses)
        if (!(m > 0.0)) throw NonpositiveMass("discrete measure masses must be positive");
    MeasureSpace ms;
    ms.kind = MeasureSpace::Kind::discrete;
    ms.descriptor = "explicit";
    ms.nodes = std::move(points);
    ms.weights = std::move(masses);
    return ms;
}

// Counting measure on {0, 1, ..., m-1}; the ordinary discrete-frame setting.
inline MeasureSpace counting(std::size_t m) {
    std::vector<double> pts(m), ones(m, 1.0);
    for (std::size_t i = 0; i < m; ++i) pts[i] = static_cast<double>(i);
    return discrete(std::move(pts), std::move(ones));
}

} // namespace cframe
