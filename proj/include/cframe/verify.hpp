#pragma once

#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "cframe/controlled.hpp"
#include "cframe/frame.hpp"
#include "cframe/framespec.hpp"

namespace cframe {

enum class CheckStatus { pass, fail, skip, info };

inline const char* to_string(CheckStatus s) {
    switch (s) {
        case CheckStatus::pass: return "PASS";
        case CheckStatus::fail: return "FAIL";
        case CheckStatus::skip: return "SKIP";
        case CheckStatus::info: return "INFO";
    }
    return "?";
}

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::skip;
    double residual = 0.0;
    std::string detail;
};

namespace detail {

inline std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace detail

// Runs every identity and construction that applies to the loaded frame,
// skipping (with the reason) those whose hypotheses the input does not meet.
// A missing controller is treated as V = I. `report_tol` scales only the
// pass thresholds of residual checks that have no pinned tolerance.
template <ScalarType T>
std::vector<CheckResult> run_verification(const FrameBundle<T>& bundle,
                                          ClassificationMode mode = ClassificationMode::strict,
                                          double report_tol = 1e-8) {
    std::vector<CheckResult> results;
    const auto& frame = bundle.frame;
    const std::size_t n = frame.dim;
    const Matrix<T> v = bundle.controller ? *bundle.controller : Matrix<T>::identity(n);
    const bool has_v = bundle.controller.has_value();
    const ControlledFrame<T> cf{frame, v};

    auto push = [&](std::string name, CheckStatus st, double residual, std::string detail) {
        results.push_back({std::move(name), st, residual, std::move(detail)});
    };

    const auto fa = analyze(frame);
    const bool is_frame = fa.is_frame();
    push("frame_bounds", is_frame ? CheckStatus::pass : CheckStatus::fail, fa.condition,
         std::string("A=") + detail::fmt_g(fa.lower) + " B=" + detail::fmt_g(fa.upper) +
             " classification=" + to_string(fa.classification));

    {
        // integral of ||F||^2 equals trace(S_F) and is at most B*N
        const double energy = frame.bessel_energy();
        const double tr = real_s(trace(fa.frame_operator));
        const double r1 = std::abs(energy - tr);
        const bool ok = r1 <= report_tol * std::max(1.0, energy) &&
                        tr <= fa.upper * static_cast<double>(n) + report_tol;
        push("bessel_energy_trace", ok ? CheckStatus::pass : CheckStatus::fail, r1,
             std::string("energy=") + detail::fmt_g(energy) + " B*N=" +
                 detail::fmt_g(fa.upper * static_cast<double>(n)));
    }

    const auto ca = controlled_analyze(cf, mode);

    {
        const auto vs = v * fa.frame_operator;
        const double r = max_abs_diff(ca.controlled_operator, vs);
        const bool ok = r <= report_tol * std::max(1.0, vs.max_norm());
        push("factorization", ok ? CheckStatus::pass : CheckStatus::fail, r,
             "S_VF vs V*S_F max difference");
    }

    {
        const bool positive = ca.classification == ControlledClass::controlled_frame ||
                              ca.classification == ControlledClass::tight ||
                              ca.classification == ControlledClass::parseval;
        push("controlled_positivity", positive ? CheckStatus::pass : CheckStatus::fail,
             ca.lower,
             std::string("classification=") + to_string(ca.classification) + " A=" +
                 detail::fmt_g(ca.lower) + " B=" + detail::fmt_g(ca.upper));
    }

    push("commutes_with_S", CheckStatus::info, ca.commutator,
         std::string("commutes_with_S=") + (ca.commutes_with_S ? "true" : "false"));

    {
        const double gap = duality_symmetry_gap(cf);
        const bool v_self_adjoint =
            max_abs_diff(v, adjoint(v)) <= tol::hermitian_tol(v);
        if (v_self_adjoint && ca.commutes_with_S) {
            const bool ok = gap <= report_tol * std::max(1.0, ca.controlled_operator.max_norm());
            push("duality_symmetry", ok ? CheckStatus::pass : CheckStatus::fail, gap,
                 "controlled vs mirrored synthesis");
        } else {
            push("duality_symmetry", CheckStatus::info, gap,
                 "hypotheses unmet (V self-adjoint and commuting); gap reported");
        }
    }

    if (!is_frame) {
        push("canonical_dual_reconstruction", CheckStatus::skip, 0.0, "not a frame");
        push("parsevalize", CheckStatus::skip, 0.0, "not a frame");
        push("gramian_projection", CheckStatus::skip, 0.0, "not a frame");
        push("tightness_construction", CheckStatus::skip, 0.0, "not a frame");
        push("distance_decomposition", CheckStatus::skip, 0.0, "not a frame");
        push("transfer_identity", CheckStatus::skip, 0.0, "not a frame");
        push("projection_preservation", CheckStatus::skip, 0.0, "not a frame");
        push("controlled_dual_reconstruction", CheckStatus::skip, 0.0, "not a frame");
        push("dual_equivalence", CheckStatus::skip, 0.0, "not a frame");
        push("trace_identity", CheckStatus::skip, 0.0, "not a frame");
        push("trace_via_frame", CheckStatus::skip, 0.0, "not a frame");
        push("trace_bound", CheckStatus::skip, 0.0, "not a frame");
        return results;
    }

    {
        const auto dual = canonical_dual(frame);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            Vector<T> e(n);
            e[k] = T{1};
            const auto coeff = analysis(dual, e);
            worst = std::max(worst, (synthesis(frame, coeff) - e).norm());
        }
        push("canonical_dual_reconstruction",
             worst <= tol::recon_tol ? CheckStatus::pass : CheckStatus::fail, worst,
             "f = sum w <f, S^-1 F> F on basis vectors");
    }

    const auto parseval_frame = parsevalize(frame);
    {
        const auto pa = analyze(parseval_frame);
        const bool ok = pa.classification == FrameClass::parseval;
        push("parsevalize", ok ? CheckStatus::pass : CheckStatus::fail,
             std::max(std::abs(pa.lower - 1.0), std::abs(pa.upper - 1.0)),
             std::string("classification=") + to_string(pa.classification));
    }

    {
        const auto g = gramian(ControlledFrame<T>{parseval_frame, Matrix<T>::identity(n)});
        const double r = max_abs_diff(g * g, g);
        push("gramian_projection",
             r <= tol::gram_tol * std::max(1.0, g.max_norm()) ? CheckStatus::pass
                                                              : CheckStatus::fail,
             r, "G^2 = G for the Parseval-ized frame");
    }

    {
        const auto v1 = tight_controller(frame, 1.0);
        const auto t_ca = controlled_analyze(ControlledFrame<T>{frame, v1}, mode);
        const double r = std::max(std::abs(t_ca.lower - 1.0), std::abs(t_ca.upper - 1.0));
        bool ok = t_ca.classification == ControlledClass::parseval && r <= tol::tight_tol;
        std::string detail_text = std::string("alpha=1 controller yields ") +
                                  to_string(t_ca.classification);
        if (ok && has_v &&
            (ca.classification == ControlledClass::tight ||
             ca.classification == ControlledClass::parseval)) {
            const double alpha = ca.classification == ControlledClass::parseval
                                     ? 1.0
                                     : ca.tight_alpha;
            const auto expected = tight_controller(frame, alpha);
            const double dv = max_abs_diff(v, expected);
            ok = dv <= 1e-7 * std::max(1.0, expected.max_norm());
            detail_text += "; spec controller matches alpha*S^-1 within " + detail::fmt_g(dv);
        }
        push("tightness_construction", ok ? CheckStatus::pass : CheckStatus::fail, r,
             detail_text);
    }

    const bool v_self_adjoint = max_abs_diff(v, adjoint(v)) <= tol::hermitian_tol(v);
    const bool v_positive = v_self_adjoint && classify(v).positive_definite;

    {
        // decomposition against the canonical Parseval frame; the controller
        // enters only when it meets the commuting positive hypothesis
        const Matrix<T> vd = (v_positive && ca.commutes_with_S) ? v : Matrix<T>::identity(n);
        const auto d = parseval_distance_decomposition(frame, parseval_frame, vd);
        const double r = std::abs(d.residual());
        const bool ok = r <= tol::decomp_tol * (1.0 + d.lhs) && d.lhs >= d.term1 - 1e-9;
        push("distance_decomposition", ok ? CheckStatus::pass : CheckStatus::fail, r,
             std::string("lhs=") + detail::fmt_g(d.lhs) + " term1=" + detail::fmt_g(d.term1) +
                 " term2=" + detail::fmt_g(d.term2));
    }

    if (ca.commutes_with_S) {
        const auto l = operator_power(fa.frame_operator, 1.0); // beta = 3
        const auto moved = transfer(cf, l);
        const auto lhs = controlled_operator(moved);
        const auto rhs = l * ca.controlled_operator * adjoint(l);
        const double r = max_abs_diff(lhs, rhs);
        push("transfer_identity",
             r <= tol::transfer_tol * std::max(1.0, rhs.max_norm()) ? CheckStatus::pass
                                                                    : CheckStatus::fail,
             r, "L = S_F, frame operator L S_VF L*");
    } else {
        push("transfer_identity", CheckStatus::skip, ca.commutator,
             "needs V commuting with S_F");
    }

    {
        const auto s_eig = hermitian_eig(fa.frame_operator);
        const std::size_t keep = (n + 1) / 2;
        Matrix<T> u(n, n);
        for (std::size_t j = 0; j < keep; ++j) {
            Vector<T> q(n);
            for (std::size_t i = 0; i < n; ++i) q[i] = s_eig.eigenvectors(i, j);
            add_scaled_outer(u, 1.0, q, q);
        }
        if (commutator_norm(u, v) <= tol::commute_tol(u, v)) {
            const auto pr = project(cf, u, mode);
            const bool positive =
                pr.restricted.classification == ControlledClass::controlled_frame ||
                pr.restricted.classification == ControlledClass::tight ||
                pr.restricted.classification == ControlledClass::parseval;
            bool ok = pr.degenerate || positive;
            ok = ok && pr.restricted.lower >= ca.lower - tol::proj_tol &&
                 pr.restricted.upper <= ca.upper + tol::proj_tol;
            if (ca.classification == ControlledClass::parseval)
                ok = ok && pr.restricted.classification == ControlledClass::parseval;
            push("projection_preservation", ok ? CheckStatus::pass : CheckStatus::fail,
                 pr.restricted.lower,
                 std::string("rank ") + std::to_string(pr.subspace_dim) + " restriction: " +
                     to_string(pr.restricted.classification));
        } else {
            push("projection_preservation", CheckStatus::skip, 0.0,
                 "needs a projection commuting with V");
        }
    }

    const bool controlled_ok = ca.classification == ControlledClass::controlled_frame ||
                               ca.classification == ControlledClass::tight ||
                               ca.classification == ControlledClass::parseval;
    if (controlled_ok) {
        const auto dual = controlled_dual(cf, mode);
        double worst = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            Vector<T> e(n);
            e[k] = T{1};
            const auto coeff = analysis(frame, e);
            worst = std::max(worst, (synthesis(dual, coeff) - e).norm());
        }
        push("controlled_dual_reconstruction",
             worst <= tol::recon_tol ? CheckStatus::pass : CheckStatus::fail, worst,
             "f = sum w <f, F> S_VF^-1 V F on basis vectors");

        const auto rep = frame_equivalent(dual, frame);
        const auto expected = general_inverse(ca.controlled_operator) * v;
        const double dp = rep.transform ? max_abs_diff(*rep.transform, expected) : 1.0;
        const bool ok = rep.equivalent && dp <= 1e-7 * std::max(1.0, expected.max_norm());
        push("dual_equivalence", ok ? CheckStatus::pass : CheckStatus::fail, rep.residual,
             "controlled dual = P F with P = S_VF^-1 V");
    } else {
        push("controlled_dual_reconstruction", CheckStatus::skip, 0.0,
             "needs an invertible positive S_VF");
        push("dual_equivalence", CheckStatus::skip, 0.0, "needs an invertible positive S_VF");
    }

    if (ca.classification == ControlledClass::parseval) {
        const auto rep = trace_identity_check(cf, mode);
        push("trace_identity", rep.residual <= tol::trace_tol ? CheckStatus::pass
                                                              : CheckStatus::fail,
             rep.residual, std::string("lhs=") + detail::fmt_g(rep.lhs) + " expected=" +
                               detail::fmt_g(rep.expected));

        Matrix<T> g0(n, n);
        for (std::size_t i = 0; i < n; ++i) g0(i, i) = T{static_cast<double>(i + 1)};
        const T tr = trace_of_operator_via_frame(cf, g0, mode);
        const double r = std::sqrt(abs2(tr - trace(g0)));
        push("trace_via_frame", r <= tol::trace_tol ? CheckStatus::pass : CheckStatus::fail, r,
             "Tr(G) recovered through the frame");
    } else {
        push("trace_identity", CheckStatus::skip, 0.0, "needs a Parseval controlled frame");
        push("trace_via_frame", CheckStatus::skip, 0.0, "needs a Parseval controlled frame");
    }

    if (v_positive) {
        const auto rep = trace_bound_check(cf);
        push("trace_bound", rep.holds ? CheckStatus::pass : CheckStatus::fail,
             rep.rhs - rep.lhs,
             std::string("Tr(S_VF)=") + detail::fmt_g(rep.lhs) + " bound=" +
                 detail::fmt_g(rep.rhs));
    } else {
        push("trace_bound", CheckStatus::skip, 0.0, "needs a self-adjoint positive V");
    }

    return results;
}

inline bool all_passed(const std::vector<CheckResult>& results) {
    for (const auto& r : results)
        if (r.status == CheckStatus::fail) return false;
    return true;
}

} // namespace cframe
