#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cframe/eigen.hpp"
#include "cframe/errors.hpp"
#include "cframe/frame.hpp"
#include "cframe/matrix.hpp"
#include "cframe/tolerances.hpp"

namespace cframe {

// A sampled frame together with an invertible controller V.
template <ScalarType T>
struct ControlledFrame {
    SampledFrame<T> frame;
    Matrix<T> controller;
};

template <ScalarType T>
ControlledFrame<T> make_controlled(SampledFrame<T> frame, Matrix<T> controller) {
    if (!controller.square() || controller.rows() != frame.dim)
        throw DimMismatch("controller must be square of the frame dimension");
    if (!classify(controller).invertible)
        throw ValidationError("V", "controller must be invertible");
    return ControlledFrame<T>{std::move(frame), std::move(controller)};
}

// S_VF = sum_i w_i (V F_i) F_i^*; equals V S_F up to assembly roundoff.
template <ScalarType T>
Matrix<T> controlled_operator(const ControlledFrame<T>& cf) {
    Matrix<T> s(cf.frame.dim, cf.frame.dim);
    for (std::size_t i = 0; i < cf.frame.samples.size(); ++i) {
        const Vector<T> vf = cf.controller * cf.frame.samples[i];
        add_scaled_outer(s, cf.frame.space.weights[i], vf, cf.frame.samples[i]);
    }
    return s;
}

enum class ControlledClass { controlled_frame, controlled_bessel, tight, parseval, indefinite };

inline const char* to_string(ControlledClass c) {
    switch (c) {
        case ControlledClass::controlled_frame: return "controlled_frame";
        case ControlledClass::controlled_bessel: return "controlled_bessel";
        case ControlledClass::tight: return "tight";
        case ControlledClass::parseval: return "parseval";
        case ControlledClass::indefinite: return "indefinite";
    }
    return "?";
}

// strict: the defining sesquilinear form must be real for every argument,
// which forces S_VF self-adjoint, in addition to positive definiteness.
// lenient: classify on the Hermitian part alone and only flag the skew part.
enum class ClassificationMode { strict, lenient };

template <ScalarType T>
struct ControlledAnalysis {
    Matrix<T> controlled_operator;
    bool quadratic_form_real = false;
    double skew_norm = 0.0;          // max-norm of the skew part of S_VF
    double lower = 0.0;              // spectrum of the Hermitian part
    double upper = 0.0;
    ControlledClass classification = ControlledClass::indefinite;
    double tight_alpha = 0.0;
    bool commutes_with_S = false;
    double commutator = 0.0;         // ||V S_F - S_F V||_max
};

namespace detail {

struct FormClassification {
    bool quadratic_form_real;
    double skew_norm;
    double lower, upper;
    ControlledClass classification;
    double tight_alpha;
};

template <ScalarType T>
FormClassification classify_controlled_operator(const Matrix<T>& svf, ClassificationMode mode) {
    FormClassification out{};
    const auto herm = hermitian_part(svf);
    out.skew_norm = skew_part(svf).max_norm();
    out.quadratic_form_real = out.skew_norm <= tol::hermitian_tol(svf);

    const auto eig = hermitian_eig(herm);
    out.lower = eig.eigenvalues.front();
    out.upper = eig.eigenvalues.back();

    const bool definite = out.upper > 0.0 && out.lower > tol::frame_tol(out.upper);
    if (definite) {
        out.classification = ControlledClass::controlled_frame;
        if (out.upper - out.lower <= tol::tight_tol * out.upper) {
            out.tight_alpha = 0.5 * (out.lower + out.upper);
            out.classification = std::abs(out.lower - 1.0) <= tol::tight_tol
                                     ? ControlledClass::parseval
                                     : ControlledClass::tight;
        }
        if (mode == ClassificationMode::strict && !out.quadratic_form_real) {
            // upper bound still holds; the strict lower-bound reading fails
            out.classification = ControlledClass::controlled_bessel;
            out.tight_alpha = 0.0;
        }
    } else if (out.lower < -tol::psd_tol(herm)) {
        out.classification = ControlledClass::indefinite;
    } else {
        out.classification = ControlledClass::controlled_bessel;
    }
    return out;
}

} // namespace detail

template <ScalarType T>
ControlledAnalysis<T> controlled_analyze(const ControlledFrame<T>& cf,
                                         ClassificationMode mode = ClassificationMode::strict) {
    ControlledAnalysis<T> out;
    out.controlled_operator = controlled_operator(cf);
    const auto form = detail::classify_controlled_operator(out.controlled_operator, mode);
    out.quadratic_form_real = form.quadratic_form_real;
    out.skew_norm = form.skew_norm;
    out.lower = form.lower;
    out.upper = form.upper;
    out.classification = form.classification;
    out.tight_alpha = form.tight_alpha;

    const auto s = frame_operator(cf.frame);
    const auto vs = cf.controller * s;
    out.commutator = max_abs_diff(vs, s * cf.controller);
    out.commutes_with_S = out.commutator <= 1e-9 * std::max(1.0, vs.max_norm());
    return out;
}

// V with prescribed positive spectrum on the eigenvectors of S_F, so that
// V S_F = S_F V by construction.
template <ScalarType T>
ControlledFrame<T> controlled_from_spectrum(const SampledFrame<T>& frame,
                                            const std::vector<double>& alphas) {
    if (alphas.size() != frame.dim)
        throw DimMismatch("one spectrum value per dimension required");
    for (double a : alphas)
        if (!(a > 0.0)) throw NonpositiveAlpha("controller spectrum must be positive");
    const auto eig = detail::frame_operator_eig(frame);
    Matrix<T> scaled = eig.eigenvectors;
    for (std::size_t j = 0; j < alphas.size(); ++j)
        for (std::size_t i = 0; i < frame.dim; ++i) scaled(i, j) *= alphas[j];
    auto controller = hermitian_part(scaled * adjoint(eig.eigenvectors));
    return ControlledFrame<T>{frame, std::move(controller)};
}

// S_VF^{-1} V F, the controlled dual; reconstructs f from the plain analysis
// coefficients of F.
template <ScalarType T>
SampledFrame<T> controlled_dual(const ControlledFrame<T>& cf,
                                ClassificationMode mode = ClassificationMode::strict) {
    const auto ca = controlled_analyze(cf, mode);
    const bool ok = ca.classification == ControlledClass::controlled_frame ||
                    ca.classification == ControlledClass::tight ||
                    ca.classification == ControlledClass::parseval;
    if (!ok) throw NotControlledFrame("controlled dual needs an invertible positive S_VF");
    const auto map = general_inverse(ca.controlled_operator) * cf.controller;
    return apply_to_samples(map, cf.frame);
}

// Weight-symmetrized V-Gramian on coefficient space:
// G_ij = sqrt(w_i w_j) <V F_j, F_i>. For V = I and a Parseval frame this is
// an orthogonal projection.
template <ScalarType T>
Matrix<T> gramian(const ControlledFrame<T>& cf) {
    const std::size_t m = cf.frame.samples.size();
    std::vector<Vector<T>> vf;
    vf.reserve(m);
    for (const auto& s : cf.frame.samples) vf.push_back(cf.controller * s);
    Matrix<T> g(m, m);
    for (std::size_t i = 0; i < m; ++i) {
        const double wi = std::sqrt(cf.frame.space.weights[i]);
        for (std::size_t j = 0; j < m; ++j) {
            const double wj = std::sqrt(cf.frame.space.weights[j]);
            g(i, j) = wi * wj * inner(vf[j], cf.frame.samples[i]);
        }
    }
    return g;
}

struct GramianComparison {
    bool preserved = false;
    double gap = 0.0; // max-norm difference of the two Gramians
};

// Whether mapping the frame through `op` leaves the V-Gramian unchanged;
// true exactly for unitary `op` commuting with V.
template <ScalarType T>
GramianComparison gramian_preserved_by(const ControlledFrame<T>& cf, const Matrix<T>& op,
                                       bool force_evaluate = false) {
    const double comm = commutator_norm(op, cf.controller);
    if (!force_evaluate && comm > tol::commute_tol(op, cf.controller))
        throw NotCommuting("operator does not commute with the controller");
    const auto base = gramian(cf);
    const auto moved = gramian(ControlledFrame<T>{apply_to_samples(op, cf.frame), cf.controller});
    GramianComparison out;
    out.gap = max_abs_diff(base, moved);
    out.preserved = out.gap <= tol::gram_tol * std::max(1.0, base.max_norm());
    return out;
}

// {L F} for positive L commuting with V; controlled operator L S_VF L^*.
template <ScalarType T>
ControlledFrame<T> transfer(const ControlledFrame<T>& cf, const Matrix<T>& l) {
    if (max_abs_diff(l, adjoint(l)) > tol::hermitian_tol(l))
        throw NotPositive("transfer operator must be self-adjoint positive");
    if (!classify(l).positive_definite)
        throw NotPositive("transfer operator must be positive definite");
    if (commutator_norm(l, cf.controller) > tol::commute_tol(l, cf.controller))
        throw NotCommuting("transfer operator must commute with the controller");
    return ControlledFrame<T>{apply_to_samples(l, cf.frame), cf.controller};
}

template <ScalarType T>
struct ProjectedControlledFrame {
    ControlledFrame<T> projected;      // samples U F_i, controller V
    Matrix<T> subspace_basis;          // orthonormal columns spanning range(U)
    std::size_t subspace_dim = 0;
    Matrix<T> restricted_operator;     // basis^* S_{V,UF} basis
    detail::FormClassification restricted; // classification on the subspace
    bool degenerate = false;           // range(U) = {0}
};

// {U F} for an orthogonal projection U commuting with V: a V-controlled frame
// for range(U) with the original bounds; Parseval stays Parseval.
template <ScalarType T>
ProjectedControlledFrame<T> project(const ControlledFrame<T>& cf, const Matrix<T>& u,
                                    ClassificationMode mode = ClassificationMode::strict) {
    const double scale = std::max(1.0, u.max_norm());
    if (max_abs_diff(u, adjoint(u)) > tol::proj_tol * scale)
        throw NotAProjection("projection must be self-adjoint");
    if (max_abs_diff(u * u, u) > tol::proj_tol * scale)
        throw NotAProjection("projection must be idempotent");
    if (commutator_norm(u, cf.controller) > tol::commute_tol(u, cf.controller))
        throw NotCommuting("projection must commute with the controller");

    ProjectedControlledFrame<T> out;
    out.projected = ControlledFrame<T>{apply_to_samples(u, cf.frame), cf.controller};

    const auto eig = hermitian_eig(u);
    std::size_t k = 0;
    for (double lambda : eig.eigenvalues)
        if (lambda > 0.5) ++k;
    out.subspace_dim = k;
    out.degenerate = (k == 0);
    Matrix<T> basis(cf.frame.dim, k);
    std::size_t col = 0;
    for (std::size_t j = 0; j < eig.eigenvalues.size(); ++j) {
        if (eig.eigenvalues[j] > 0.5) {
            for (std::size_t i = 0; i < cf.frame.dim; ++i)
                basis(i, col) = eig.eigenvectors(i, j);
            ++col;
        }
    }
    out.subspace_basis = basis;
    const auto svf = controlled_operator(out.projected);
    out.restricted_operator = adjoint(basis) * svf * basis;
    if (!out.degenerate)
        out.restricted = detail::classify_controlled_operator(out.restricted_operator, mode);
    return out;
}

// V = alpha S_F^{-1}: the unique controller making the frame alpha-tight.
template <ScalarType T>
Matrix<T> tight_controller(const SampledFrame<T>& frame, double alpha) {
    if (!(alpha > 0.0)) throw NonpositiveAlpha("tightness level must be positive");
    const auto eig = detail::frame_operator_eig(frame);
    return spectral_map(eig, [alpha](double x) { return alpha / x; });
}

struct TraceIdentityReport {
    double lhs = 0.0;       // integral of <V F, F>
    double expected = 0.0;  // the space dimension N
    double residual = 0.0;
};

// For Parseval controlled frames the integral of <V F, F> equals N.
template <ScalarType T>
TraceIdentityReport trace_identity_check(const ControlledFrame<T>& cf,
                                         ClassificationMode mode = ClassificationMode::strict) {
    const auto ca = controlled_analyze(cf, mode);
    if (ca.classification != ControlledClass::parseval)
        throw NotParsevalControlled("trace identity requires a Parseval controlled frame");
    double lhs = 0.0;
    for (std::size_t i = 0; i < cf.frame.samples.size(); ++i)
        lhs += cf.frame.space.weights[i] *
               real_s(inner(cf.controller * cf.frame.samples[i], cf.frame.samples[i]));
    TraceIdentityReport out;
    out.lhs = lhs;
    out.expected = static_cast<double>(cf.frame.dim);
    out.residual = std::abs(lhs - out.expected);
    return out;
}

struct TraceBoundReport {
    double lhs = 0.0; // trace(S_VF)
    double rhs = 0.0; // trace(V) * integral of ||F||^2
    bool holds = false;
};

template <ScalarType T>
TraceBoundReport trace_bound_check(const ControlledFrame<T>& cf) {
    if (max_abs_diff(cf.controller, adjoint(cf.controller)) > tol::hermitian_tol(cf.controller))
        throw NotSelfAdjoint("trace bound requires a self-adjoint controller");
    if (!classify(cf.controller).positive_semidefinite)
        throw NotPositive("trace bound requires a positive controller");
    TraceBoundReport out;
    out.lhs = real_s(trace(controlled_operator(cf)));
    out.rhs = real_s(trace(cf.controller)) * cf.frame.bessel_energy();
    out.holds = out.lhs <= out.rhs + tol::trace_tol;
    return out;
}

// Tr(G) recovered through a Parseval controlled frame.
template <ScalarType T>
T trace_of_operator_via_frame(const ControlledFrame<T>& cf, const Matrix<T>& g,
                              ClassificationMode mode = ClassificationMode::strict) {
    const auto ca = controlled_analyze(cf, mode);
    if (ca.classification != ControlledClass::parseval)
        throw NotParsevalControlled("frame trace requires a Parseval controlled frame");
    const auto gv = g * cf.controller;
    T acc{};
    for (std::size_t i = 0; i < cf.frame.samples.size(); ++i)
        acc += cf.frame.space.weights[i] *
               inner(gv * cf.frame.samples[i], cf.frame.samples[i]);
    return acc;
}

template <ScalarType T>
struct EquivalenceReport {
    bool equivalent = false;
    double residual = 0.0; // max_i ||F_i - P G_i|| relative to max_i ||F_i||
    std::optional<Matrix<T>> transform;
};

// F ~ G when F = P G for one fixed invertible P; fitted by least squares
// P = (sum_i w_i F_i G_i^*) S_G^{-1}.
template <ScalarType T>
EquivalenceReport<T> frame_equivalent(const SampledFrame<T>& f, const SampledFrame<T>& g) {
    if (!f.space.same_as(g.space)) throw SpaceMismatch("equivalence needs one measure space");
    if (f.dim != g.dim) throw DimMismatch("equivalence needs matching dimensions");
    const auto g_eig = detail::frame_operator_eig(g);
    const auto sg_inv = spectral_map(g_eig, [](double x) { return 1.0 / x; });
    Matrix<T> cross(f.dim, f.dim);
    for (std::size_t i = 0; i < f.samples.size(); ++i)
        add_scaled_outer(cross, f.space.weights[i], f.samples[i], g.samples[i]);
    Matrix<T> p = cross * sg_inv;

    double max_err = 0.0, max_f = 0.0;
    for (std::size_t i = 0; i < f.samples.size(); ++i) {
        max_err = std::max(max_err, (f.samples[i] - p * g.samples[i]).norm());
        max_f = std::max(max_f, f.samples[i].norm());
    }
    EquivalenceReport<T> out;
    out.residual = max_f > 0.0 ? max_err / max_f : max_err;
    out.equivalent = max_err <= tol::equiv_tol * std::max(max_f, 1e-30) &&
                     classify(p).invertible;
    out.transform = std::move(p);
    return out;
}

template <ScalarType T>
struct PositivityReport {
    Matrix<T> controller_reconstructed;
    std::vector<double> ratios; // alpha_k / beta_k along the common eigenbasis
    bool positive = false;
    double reconstruction_residual = 0.0;
};

// When S_VF is normal, commutes with V, and shares an eigenbasis with S_F,
// the controller acts on that basis by the eigenvalue ratios, which are
// positive exactly when V is a positive operator.
template <ScalarType T>
PositivityReport<T> positivity_from_normality(const ControlledFrame<T>& cf) {
    const auto svf = controlled_operator(cf);
    const auto s = frame_operator(cf.frame);

    const auto prod = svf * adjoint(svf);
    if (max_abs_diff(prod, adjoint(svf) * svf) >
        tol::normal_tol * std::max(1.0, prod.max_norm()))
        throw NotNormal("S_VF is not normal within tolerance");
    if (commutator_norm(cf.controller, svf) > tol::commute_tol(cf.controller, svf))
        throw NotCommuting("V does not commute with S_VF");
    if (commutator_norm(svf, s) > tol::commute_tol(svf, s))
        throw NotCommuting("S_VF does not commute with S_F");

    const auto s_eig = hermitian_eig(s);
    if (detail::classify_bounds(s_eig.eigenvalues.front(), s_eig.eigenvalues.back()) ==
        FrameClass::bessel_only)
        throw NotAFrame("family is not a frame");

    // genericity nudge so repeated eigenvalues still pick a shared basis
    const double svf_scale = svf.max_norm();
    const double eps = svf_scale > 0.0 ? 1e-4 * s.max_norm() / svf_scale : 0.0;
    const auto combo = hermitian_eig(s + eps * hermitian_part(svf));

    const std::size_t n = cf.frame.dim;
    PositivityReport<T> out;
    out.ratios.resize(n);
    Matrix<T> scaled = combo.eigenvectors;
    for (std::size_t k = 0; k < n; ++k) {
        Vector<T> e(n);
        for (std::size_t i = 0; i < n; ++i) e[i] = combo.eigenvectors(i, k);
        const double beta = real_s(inner(s * e, e));
        const T alpha_full = inner(svf * e, e);
        if ((s * e - beta * e).norm() > tol::eig_tol * std::max(1.0, s.max_norm()) ||
            (svf * e - alpha_full * e).norm() > tol::eig_tol * std::max(1.0, svf_scale))
            throw EigenbasisMismatch("no consistent common eigenbasis of S_F and S_VF");
        out.ratios[k] = real_s(alpha_full) / beta;
        for (std::size_t i = 0; i < n; ++i) scaled(i, k) *= out.ratios[k];
    }
    out.controller_reconstructed = scaled * adjoint(combo.eigenvectors);
    out.positive = true;
    for (double r : out.ratios)
        if (!(r > 0.0)) out.positive = false;
    out.reconstruction_residual = max_abs_diff(out.controller_reconstructed, cf.controller);
    return out;
}

// Max-norm gap between sum w <f,F> V F and sum w <f,VF> F as operators on f.
// Zero for self-adjoint V commuting with S_F; nonzero otherwise.
template <ScalarType T>
double duality_symmetry_gap(const ControlledFrame<T>& cf) {
    const std::size_t n = cf.frame.dim;
    Matrix<T> left(n, n), right(n, n);
    for (std::size_t i = 0; i < cf.frame.samples.size(); ++i) {
        const double w = cf.frame.space.weights[i];
        const Vector<T> vf = cf.controller * cf.frame.samples[i];
        add_scaled_outer(left, w, vf, cf.frame.samples[i]);
        add_scaled_outer(right, w, cf.frame.samples[i], vf);
    }
    return max_abs_diff(left, right);
}

} // namespace cframe
