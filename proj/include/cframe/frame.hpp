#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <utility>
#include <vector>

#include "cframe/eigen.hpp"
#include "cframe/errors.hpp"
#include "cframe/matrix.hpp"
#include "cframe/measure.hpp"
#include "cframe/tolerances.hpp"

namespace cframe {

// A frame family sampled at the measure nodes: one vector of H^N per node.
template <ScalarType T>
struct SampledFrame {
    MeasureSpace space;
    std::size_t dim = 0;
    std::vector<Vector<T>> samples;

    // integral of ||F||^2, the Bessel energy; always finite once sampled
    double bessel_energy() const {
        double acc = 0.0;
        for (std::size_t i = 0; i < samples.size(); ++i)
            acc += space.weights[i] * samples[i].norm2();
        return acc;
    }
};

template <ScalarType T>
SampledFrame<T> make_frame(MeasureSpace space, std::vector<Vector<T>> samples) {
    if (samples.size() != space.size())
        throw SpaceMismatch("one frame sample per measure node required");
    if (samples.empty()) throw DimMismatch("frame needs at least one sample");
    const std::size_t n = samples.front().dim();
    for (const auto& s : samples)
        if (s.dim() != n) throw DimMismatch("all frame samples must share one dimension");
    return SampledFrame<T>{std::move(space), n, std::move(samples)};
}

// Samples mapped through a fixed operator, same measure.
template <ScalarType T>
SampledFrame<T> apply_to_samples(const Matrix<T>& op, const SampledFrame<T>& f) {
    std::vector<Vector<T>> mapped;
    mapped.reserve(f.samples.size());
    for (const auto& s : f.samples) mapped.push_back(op * s);
    return SampledFrame<T>{f.space, op.rows(), std::move(mapped)};
}

// A function on the measure nodes; the discretized element of L^2(A, mu).
template <ScalarType T>
struct CoefficientFunction {
    MeasureSpace space;
    std::vector<T> values;

    double norm2_mu() const {
        double acc = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) acc += space.weights[i] * abs2(values[i]);
        return acc;
    }
};

// values_i = <f, F_i>
template <ScalarType T>
CoefficientFunction<T> analysis(const SampledFrame<T>& frame, const Vector<T>& f) {
    if (f.dim() != frame.dim) throw DimMismatch("analysis: vector dimension mismatch");
    std::vector<T> values(frame.samples.size());
    for (std::size_t i = 0; i < frame.samples.size(); ++i) values[i] = inner(f, frame.samples[i]);
    return CoefficientFunction<T>{frame.space, std::move(values)};
}

// sum_i w_i c_i F_i; the adjoint of analysis under the mu-weighted inner product
template <ScalarType T>
Vector<T> synthesis(const SampledFrame<T>& frame, const CoefficientFunction<T>& c) {
    if (!frame.space.same_as(c.space)) throw SpaceMismatch("synthesis: measure spaces differ");
    Vector<T> out(frame.dim);
    for (std::size_t i = 0; i < frame.samples.size(); ++i) {
        const T wc = frame.space.weights[i] * c.values[i];
        for (std::size_t k = 0; k < frame.dim; ++k) out[k] += wc * frame.samples[i][k];
    }
    return out;
}

// S_F = sum_i w_i F_i F_i^*; self-adjoint positive semidefinite by construction.
template <ScalarType T>
Matrix<T> frame_operator(const SampledFrame<T>& frame) {
    Matrix<T> s(frame.dim, frame.dim);
    for (std::size_t i = 0; i < frame.samples.size(); ++i)
        add_scaled_outer(s, frame.space.weights[i], frame.samples[i], frame.samples[i]);
    return s;
}

enum class FrameClass { frame, bessel_only, tight, parseval };

inline const char* to_string(FrameClass c) {
    switch (c) {
        case FrameClass::frame: return "frame";
        case FrameClass::bessel_only: return "bessel_only";
        case FrameClass::tight: return "tight";
        case FrameClass::parseval: return "parseval";
    }
    return "?";
}

template <ScalarType T>
struct FrameAnalysis {
    Matrix<T> frame_operator;
    double lower = 0.0;            // optimal A = lambda_min(S_F)
    double upper = 0.0;            // optimal B = lambda_max(S_F)
    FrameClass classification = FrameClass::bessel_only;
    double tight_alpha = 0.0;      // meaningful for tight/parseval
    double condition = std::numeric_limits<double>::infinity();

    bool is_frame() const { return classification != FrameClass::bessel_only; }
};

namespace detail {

inline FrameClass classify_bounds(double lower, double upper) {
    if (!(lower > tol::frame_tol(upper)) || upper == 0.0) return FrameClass::bessel_only;
    if (upper - lower <= tol::tight_tol * upper) {
        if (std::abs(lower - 1.0) <= tol::tight_tol) return FrameClass::parseval;
        return FrameClass::tight;
    }
    return FrameClass::frame;
}

} // namespace detail

template <ScalarType T>
FrameAnalysis<T> analyze(const SampledFrame<T>& frame) {
    FrameAnalysis<T> out;
    out.frame_operator = frame_operator(frame);
    const auto eig = hermitian_eig(out.frame_operator);
    out.lower = eig.eigenvalues.front();
    out.upper = eig.eigenvalues.back();
    out.classification = detail::classify_bounds(out.lower, out.upper);
    if (out.classification == FrameClass::tight || out.classification == FrameClass::parseval)
        out.tight_alpha = 0.5 * (out.lower + out.upper);
    out.condition = out.lower > 0.0 ? out.upper / out.lower
                                    : std::numeric_limits<double>::infinity();
    return out;
}

namespace detail {

// Eigendecomposition of S_F, with the frame condition enforced.
template <ScalarType T>
EigenDecomposition<T> frame_operator_eig(const SampledFrame<T>& frame) {
    auto eig = hermitian_eig(frame_operator(frame));
    const double lower = eig.eigenvalues.front();
    const double upper = eig.eigenvalues.back();
    if (classify_bounds(lower, upper) == FrameClass::bessel_only)
        throw NotAFrame("family does not satisfy a positive lower frame bound");
    return eig;
}

} // namespace detail

// Canonical dual S_F^{-1} F; reconstructs every f from the analysis of F.
template <ScalarType T>
SampledFrame<T> canonical_dual(const SampledFrame<T>& frame) {
    const auto eig = detail::frame_operator_eig(frame);
    const auto inv = spectral_map(eig, [](double x) { return 1.0 / x; });
    return apply_to_samples(inv, frame);
}

// S_F^{-1/2} F, the nearest Parseval frame.
template <ScalarType T>
SampledFrame<T> parsevalize(const SampledFrame<T>& frame) {
    const auto eig = detail::frame_operator_eig(frame);
    const auto inv_sqrt = spectral_map(eig, [](double x) { return 1.0 / std::sqrt(x); });
    return apply_to_samples(inv_sqrt, frame);
}

struct DistanceDecomposition {
    double lhs = 0.0;    // integral of ||V (G - F)||^2
    double term1 = 0.0;  // integral of ||V S^{-1/2} F - V F||^2
    double term2 = 0.0;  // integral of ||V (S^{1/4} G - S^{-1/4} F)||^2
    double residual() const { return lhs - term1 - term2; }
};

// Splits the weighted distance from a frame F to a Parseval frame G into the
// distance to the canonical Parseval frame plus a cross term. The identity
// requires G Parseval; pass enforce_hypotheses = false to evaluate the three
// integrals for arbitrary G and inspect the residual.
template <ScalarType T>
DistanceDecomposition parseval_distance_decomposition(const SampledFrame<T>& frame,
                                                      const SampledFrame<T>& parseval_g,
                                                      const Matrix<T>& controller,
                                                      bool enforce_hypotheses = true) {
    if (!frame.space.same_as(parseval_g.space))
        throw SpaceMismatch("distance decomposition: measure spaces differ");
    if (frame.dim != parseval_g.dim || controller.rows() != frame.dim || !controller.square())
        throw DimMismatch("distance decomposition: dimension mismatch");
    const auto eig = detail::frame_operator_eig(frame);
    if (enforce_hypotheses) {
        const auto ga = analyze(parseval_g);
        if (ga.classification != FrameClass::parseval)
            throw NotParsevalControlled("G must be a Parseval frame");
    }
    const auto s_m14 = spectral_map(eig, [](double x) { return std::pow(x, -0.25); });
    const auto s_p14 = spectral_map(eig, [](double x) { return std::pow(x, 0.25); });
    const auto s_m12 = spectral_map(eig, [](double x) { return 1.0 / std::sqrt(x); });

    DistanceDecomposition out;
    for (std::size_t i = 0; i < frame.samples.size(); ++i) {
        const double w = frame.space.weights[i];
        const auto& fi = frame.samples[i];
        const auto& gi = parseval_g.samples[i];
        out.lhs += w * (controller * (gi - fi)).norm2();
        out.term1 += w * (controller * (s_m12 * fi) - controller * fi).norm2();
        out.term2 += w * (controller * (s_p14 * gi - s_m14 * fi)).norm2();
    }
    return out;
}

} // namespace cframe
