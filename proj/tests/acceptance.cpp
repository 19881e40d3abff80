// Acceptance suite: one criterion per check, one PASS/FAIL line each, exit 0
// only if every criterion holds. Tolerances are pinned here, not configurable.

#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "cframe/cframe.hpp"

using namespace cframe;

namespace {

using Clock = std::chrono::steady_clock;
using Rng = std::mt19937_64;

int failures = 0;

void report(int id, const char* title, bool ok, const std::string& detail) {
    if (!ok) ++failures;
    std::printf("[%s] criterion %02d: %s (%s)\n", ok ? "PASS" : "FAIL", id, title,
                detail.c_str());
    std::fflush(stdout);
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

double uniform_in(Rng& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

template <ScalarType T>
T random_scalar(Rng& rng, double lo, double hi) {
    if constexpr (is_complex_v<T>)
        return Complex(uniform_in(rng, lo, hi), uniform_in(rng, lo, hi));
    else
        return uniform_in(rng, lo, hi);
}

template <ScalarType T>
Matrix<T> random_unitary(Rng& rng, std::size_t n) {
    Matrix<T> q = Matrix<T>::identity(n);
    for (std::size_t p = 0; p + 1 < n; ++p)
        for (std::size_t r = p + 1; r < n; ++r) {
            const double theta = uniform_in(rng, 0.0, 2.0 * M_PI);
            const double c = std::cos(theta), s = std::sin(theta);
            for (std::size_t i = 0; i < n; ++i) {
                const T a = q(i, p), b = q(i, r);
                q(i, p) = c * a - s * b;
                q(i, r) = s * a + c * b;
            }
        }
    return q;
}

template <ScalarType T>
Matrix<T> with_spectrum(const Matrix<T>& q, const std::vector<double>& d) {
    Matrix<T> scaled = q;
    for (std::size_t j = 0; j < d.size(); ++j)
        for (std::size_t i = 0; i < q.rows(); ++i) scaled(i, j) *= d[j];
    return hermitian_part(scaled * adjoint(q));
}

template <ScalarType T>
SampledFrame<T> random_frame(Rng& rng, std::size_t dim, std::size_t nodes, double max_cond,
                             bool quadrature) {
    for (int attempt = 0; attempt < 200; ++attempt) {
        MeasureSpace space =
            quadrature ? gauss_legendre(0.0, 1.0, nodes) : counting(nodes);
        const double scale = quadrature ? std::sqrt(static_cast<double>(nodes)) : 1.0;
        std::vector<Vector<T>> samples;
        for (std::size_t i = 0; i < nodes; ++i) {
            Vector<T> v(dim);
            for (std::size_t k = 0; k < dim; ++k) v[k] = random_scalar<T>(rng, -scale, scale);
            samples.push_back(std::move(v));
        }
        auto frame = make_frame(std::move(space), std::move(samples));
        const auto fa = analyze(frame);
        if (fa.is_frame() && fa.condition <= max_cond) return frame;
    }
    std::fprintf(stderr, "random_frame: generator failed\n");
    std::exit(2);
}

struct CliResult {
    int exit_code;
    std::string output;
};

CliResult run_cli(const std::string& args) {
    const std::string cmd = std::string(CFRAME_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return {-1, ""};
    std::string out;
    std::array<char, 4096> buf;
    std::size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    const int rc = pclose(pipe);
    return {WIFEXITED(rc) ? WEXITSTATUS(rc) : -1, std::move(out)};
}

// ---------------------------------------------------------------------------

void criterion_01_moment_golden() {
    const auto t0 = Clock::now();
    double worst_matrix = 0.0, worst_bound = 0.0;
    for (std::size_t order : {2, 4, 8, 16}) {
        auto ms = gauss_legendre(0.0, 1.0, order);
        std::vector<Vector<double>> samples;
        for (double s : ms.nodes) samples.push_back(Vector<double>{1.0, s});
        const auto fa = analyze(make_frame(std::move(ms), std::move(samples)));
        const Matrix<double> expected{{1.0, 0.5}, {0.5, 1.0 / 3.0}};
        worst_matrix = std::max(worst_matrix, max_abs_diff(fa.frame_operator, expected));
        worst_bound = std::max(worst_bound,
                               std::abs(fa.lower - (4.0 - std::sqrt(13.0)) / 6.0));
        worst_bound = std::max(worst_bound,
                               std::abs(fa.upper - (4.0 + std::sqrt(13.0)) / 6.0));
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const bool ok = worst_matrix <= 1e-12 && worst_bound <= 1e-9 && seconds < 0.1;
    report(1, "moment-frame golden values", ok,
           "matrix residual " + fmt(worst_matrix) + ", bound residual " + fmt(worst_bound) +
               ", " + fmt(seconds) + " s");
}

template <ScalarType T>
double factorization_worst(Rng& rng, int count) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 7;
        const auto frame = random_frame<T>(rng, n, 2 * n + 2, 1e3, i % 2 == 0);
        const auto q1 = random_unitary<T>(rng, n);
        const auto q2 = random_unitary<T>(rng, n);
        Matrix<T> v = q1;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = uniform_in(rng, 0.5, 2.0);
            for (std::size_t r = 0; r < n; ++r) v(r, j) *= d;
        }
        v = v * q2;
        const ControlledFrame<T> cf{frame, v};
        const auto vs = v * frame_operator(frame);
        const double rel = max_abs_diff(controlled_operator(cf), vs) / vs.max_norm();
        worst = std::max(worst, rel);
    }
    return worst;
}

void criterion_02_factorization() {
    Rng rng(20260811);
    const auto t0 = Clock::now();
    const double worst_real = factorization_worst<double>(rng, 140);
    const double worst_cplx = factorization_worst<Complex>(rng, 80);
    const double seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    const double worst = std::max(worst_real, worst_cplx);
    const bool ok = worst <= 1e-10 && seconds < 5.0;
    report(2, "factorization S_VF = V S_F over 220 random pairs", ok,
           "worst relative residual " + fmt(worst) + ", " + fmt(seconds) + " s");
}

void criterion_03_commuting_construction() {
    Rng rng(20260812);
    double worst_comm = 0.0, worst_spec = 0.0;
    bool labels_ok = true;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 6;
        const auto frame = random_frame<double>(rng, n, 3 * n, 100.0, i % 2 == 0);
        std::vector<double> alphas(n);
        for (auto& a : alphas) a = uniform_in(rng, 0.5, 2.0);
        const auto cf = controlled_from_spectrum(frame, alphas);

        const auto s = frame_operator(frame);
        worst_comm = std::max(worst_comm, commutator_norm(cf.controller, s));

        const auto ca = controlled_analyze(cf);
        labels_ok = labels_ok && ca.classification == ControlledClass::controlled_frame;

        const auto s_eig = hermitian_eig(s);
        std::vector<double> expected(n);
        for (std::size_t k = 0; k < n; ++k) expected[k] = alphas[k] * s_eig.eigenvalues[k];
        std::sort(expected.begin(), expected.end());
        const auto svf_eig = hermitian_eig(ca.controlled_operator);
        for (std::size_t k = 0; k < n; ++k)
            worst_spec = std::max(worst_spec,
                                  std::abs(svf_eig.eigenvalues[k] - expected[k]));
    }
    const bool ok = labels_ok && worst_comm <= 1e-9 && worst_spec <= 1e-8;
    report(3, "commuting-controller construction over 100 random frames", ok,
           std::string(labels_ok ? "all controlled_frame" : "classification drift") +
               ", commutator " + fmt(worst_comm) + ", spectrum residual " + fmt(worst_spec));
}

template <ScalarType T>
double trace_identity_worst(Rng& rng, int count) {
    double worst = 0.0;
    for (int i = 0; i < count; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 5;
        const auto frame = random_frame<T>(rng, n, 3 * n, 100.0, i % 2 == 0);
        ControlledFrame<T> cf =
            (i % 2 == 0)
                ? ControlledFrame<T>{frame, tight_controller(frame, 1.0)}
                : ControlledFrame<T>{parsevalize(frame), Matrix<T>::identity(n)};
        const auto rep = trace_identity_check(cf);
        worst = std::max(worst, rep.residual);
    }
    return worst;
}

void criterion_04_trace_identity() {
    Rng rng(20260813);
    const double worst = std::max(trace_identity_worst<double>(rng, 70),
                                  trace_identity_worst<Complex>(rng, 40));
    report(4, "Parseval trace identity over 110 controlled instances", worst <= 1e-8,
           "worst |lhs - N| = " + fmt(worst));
}

void criterion_05_trace_inequality() {
    Rng rng(20260814);
    bool holds = true;
    double slack_worst = 0.0, best_ratio = 0.0;
    for (int i = 0; i < 210; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 5;
        ControlledFrame<double> cf{random_frame<double>(rng, n, 3 * n, 300.0, i % 2 == 0),
                                   Matrix<double>::identity(n)};
        if (i % 10 == 9) {
            // near-equality family: almost rank-one frame and controller aligned
            const double d1 = uniform_in(rng, 0.001, 0.004);
            const double d2 = uniform_in(rng, 0.001, 0.004);
            const auto q = random_unitary<double>(rng, 2);
            Vector<double> f1(2), f2(2);
            for (std::size_t r = 0; r < 2; ++r) {
                f1[r] = q(r, 0);
                f2[r] = std::sqrt(d1) * q(r, 1);
            }
            std::vector<Vector<double>> aligned{f1, f2};
            cf = ControlledFrame<double>{make_frame(counting(2), std::move(aligned)),
                                         with_spectrum(q, {1.0, d2})};
        } else {
            std::vector<double> d(n);
            for (auto& x : d) x = uniform_in(rng, 0.01, 3.0);
            cf.controller = with_spectrum(random_unitary<double>(rng, n), d);
        }
        const auto rep = trace_bound_check(cf);
        holds = holds && rep.lhs <= rep.rhs + 1e-8;
        slack_worst = std::max(slack_worst, rep.lhs - rep.rhs);
        if (rep.rhs > 0.0) best_ratio = std::max(best_ratio, rep.lhs / rep.rhs);
    }
    const bool ok = holds && best_ratio >= 0.99;
    report(5, "trace inequality over 210 positive controllers", ok,
           "worst slack " + fmt(slack_worst) + ", tightest ratio " + fmt(best_ratio));
}

void criterion_06_transfer() {
    Rng rng(20260815);
    double worst = 0.0;
    for (int i = 0; i < 25; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 5;
        const auto frame = random_frame<double>(rng, n, 3 * n, 50.0, i % 2 == 0);
        std::vector<double> alphas(n);
        for (auto& a : alphas) a = uniform_in(rng, 0.5, 2.0);
        const auto cf = controlled_from_spectrum(frame, alphas);
        const auto s = frame_operator(frame);
        const auto s_eig = hermitian_eig(s);
        const auto svf = controlled_operator(cf);

        auto check_l = [&](const Matrix<double>& l) {
            const auto moved = transfer(cf, l);
            const auto lhs = controlled_operator(moved);
            const auto rhs = l * svf * adjoint(l);
            worst = std::max(worst,
                             max_abs_diff(lhs, rhs) / std::max(1.0, rhs.max_norm()));
        };

        // a random positive L sharing the eigenbasis, so it commutes with V
        std::vector<double> gammas(n);
        for (auto& g : gammas) g = uniform_in(rng, 0.5, 2.0);
        check_l(with_spectrum(s_eig.eigenvectors, gammas));
        for (double beta : {-1.0, 0.0, 1.0, 2.0, 3.0})
            check_l(operator_power(s, 0.5 * (beta - 1.0)));
    }
    report(6, "transfer theorem over 150 (L, V) instances", worst <= 1e-8,
           "worst relative residual " + fmt(worst));
}

void criterion_07_gramian_unitarity() {
    Rng rng(20260816);
    double unitary_worst = 0.0, nonunitary_best = 1e300;
    for (int i = 0; i < 55; ++i) {
        const std::size_t pairs = 1 + static_cast<std::size_t>(i) % 3;
        const std::size_t n = 2 * pairs;
        const auto frame = random_frame<double>(rng, n, 3 * n, 100.0, i % 2 == 0);
        const auto s_eig = hermitian_eig(frame_operator(frame));
        // paired spectrum so block rotations commute with the controller
        std::vector<double> alphas(n);
        for (std::size_t p = 0; p < pairs; ++p)
            alphas[2 * p] = alphas[2 * p + 1] = uniform_in(rng, 0.5, 2.0);
        const auto v = with_spectrum(s_eig.eigenvectors, alphas);
        const ControlledFrame<double> cf{frame, v};

        auto block_op = [&](double scale) {
            Matrix<double> r(n, n);
            for (std::size_t p = 0; p < pairs; ++p) {
                const double th = uniform_in(rng, 0.0, 2.0 * M_PI);
                r(2 * p, 2 * p) = scale * std::cos(th);
                r(2 * p, 2 * p + 1) = -scale * std::sin(th);
                r(2 * p + 1, 2 * p) = scale * std::sin(th);
                r(2 * p + 1, 2 * p + 1) = scale * std::cos(th);
            }
            return s_eig.eigenvectors * r * adjoint(s_eig.eigenvectors);
        };

        unitary_worst = std::max(unitary_worst, gramian_preserved_by(cf, block_op(1.0)).gap);
        nonunitary_best = std::min(
            nonunitary_best,
            gramian_preserved_by(cf, block_op(uniform_in(rng, 1.8, 2.4))).gap);
    }
    const bool ok = unitary_worst <= 1e-9 && nonunitary_best > 1e-4;
    report(7, "Gramian preserved exactly by commuting unitaries", ok,
           "unitary worst gap " + fmt(unitary_worst) + ", non-unitary best gap " +
               fmt(nonunitary_best));
}

void criterion_08_distance_decomposition() {
    Rng rng(20260817);
    double worst_residual = 0.0;
    bool inequality_ok = true, biconditional_ok = true, misprint_pinned = true;
    for (int i = 0; i < 102; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 5;
        const auto frame = random_frame<double>(rng, n, 3 * n, 50.0, i % 2 == 0);
        const auto canonical = parsevalize(frame);
        const auto s_eig = hermitian_eig(frame_operator(frame));
        const auto s_m12 = spectral_map(s_eig, [](double x) { return 1.0 / std::sqrt(x); });

        SampledFrame<double> g = canonical;
        Matrix<double> v = Matrix<double>::identity(n);
        const int family = i % 3;
        if (family == 1) {
            // rotated Parseval frame: equality must fail and be detected
            g = apply_to_samples(random_unitary<double>(rng, n), canonical);
        } else if (family == 2) {
            // positive controller sharing the eigenbasis of S_F
            std::vector<double> d(n);
            for (auto& x : d) x = uniform_in(rng, 1.5, 2.5);
            v = with_spectrum(s_eig.eigenvectors, d);
        }

        const auto dd = parseval_distance_decomposition(frame, g, v);
        worst_residual = std::max(worst_residual, std::abs(dd.residual()) / (1.0 + dd.lhs));
        inequality_ok = inequality_ok && dd.lhs >= dd.term1 - 1e-9;

        const bool equality = dd.lhs - dd.term1 <= 1e-9 + 1e-9 * dd.lhs;
        double near_canonical = 0.0, near_v_scaled = 0.0;
        for (std::size_t k = 0; k < g.samples.size(); ++k) {
            near_canonical = std::max(
                near_canonical, (g.samples[k] - s_m12 * frame.samples[k]).norm());
            near_v_scaled = std::max(
                near_v_scaled, (g.samples[k] - v * (s_m12 * frame.samples[k])).norm());
        }
        // equality holds exactly when G is the canonical Parseval frame
        biconditional_ok = biconditional_ok && (equality == (near_canonical <= 1e-7));
        if (family == 2) {
            // pinned discrepancy: equality holds although G != V S^{-1/2} F,
            // so the V-scaled form of the equality condition cannot be right
            misprint_pinned = misprint_pinned && equality && near_v_scaled > 1e-4;
        }
    }
    const bool ok = worst_residual <= 1e-7 && inequality_ok && biconditional_ok &&
                    misprint_pinned;
    report(8, "Parseval distance decomposition over 102 pairs", ok,
           "worst scaled residual " + fmt(worst_residual) +
               (inequality_ok ? "" : ", inequality violated") +
               (biconditional_ok ? "" : ", equality characterization broken") +
               (misprint_pinned ? ", V-scaled equality condition refuted" : ""));
}

void criterion_09_projection() {
    Rng rng(20260818);
    bool ok = true;
    double parseval_worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n = 3 + static_cast<std::size_t>(i) % 4;
        const auto frame = random_frame<double>(rng, n, 3 * n, 50.0, i % 2 == 0);
        const auto s_eig = hermitian_eig(frame_operator(frame));

        Matrix<double> u(n, n);
        const std::size_t keep = 1 + static_cast<std::size_t>(i) % (n - 1);
        for (std::size_t j = 0; j < keep; ++j) {
            Vector<double> q(n);
            for (std::size_t r = 0; r < n; ++r) q[r] = s_eig.eigenvectors(r, j);
            add_scaled_outer(u, 1.0, q, q);
        }

        if (i % 2 == 0) {
            std::vector<double> alphas(n);
            for (auto& a : alphas) a = uniform_in(rng, 0.5, 2.0);
            const auto cf = controlled_from_spectrum(frame, alphas);
            const auto ca = controlled_analyze(cf);
            const auto pr = project(cf, u);
            const bool positive =
                pr.restricted.classification == ControlledClass::controlled_frame ||
                pr.restricted.classification == ControlledClass::tight ||
                pr.restricted.classification == ControlledClass::parseval;
            ok = ok && positive && pr.restricted.lower >= ca.lower - 1e-8 &&
                 pr.restricted.upper <= ca.upper + 1e-8;
        } else {
            const ControlledFrame<double> pf{frame, tight_controller(frame, 1.0)};
            const auto pr = project(pf, u);
            ok = ok && pr.restricted.classification == ControlledClass::parseval;
            parseval_worst = std::max(parseval_worst,
                                      std::max(std::abs(pr.restricted.lower - 1.0),
                                               std::abs(pr.restricted.upper - 1.0)));
        }
    }
    ok = ok && parseval_worst <= 1e-8;
    report(9, "projection preserves controlled frames over 100 instances", ok,
           "Parseval restriction residual " + fmt(parseval_worst));
}

void criterion_10_tightness() {
    Rng rng(20260819);
    bool ok = true;
    double bound_worst = 0.0, converse_worst = 0.0;
    int tight_count = 0;
    for (int i = 0; i < 102; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 5;
        const auto frame = random_frame<double>(rng, n, 3 * n, 50.0, i % 2 == 0);
        const double alpha = (i % 3 == 0) ? 0.5 : (i % 3 == 1 ? 1.0 : 2.0);
        auto v = tight_controller(frame, alpha);

        if (i % 4 == 3) {
            // tiny symmetric perturbation must stay classified tight and close
            const double eps = 1e-10;
            for (std::size_t r = 0; r < n; ++r) v(r, r) += eps;
        }
        const auto ca = controlled_analyze(ControlledFrame<double>{frame, v});
        const bool tight_label = ca.classification == ControlledClass::tight ||
                                 ca.classification == ControlledClass::parseval;
        ok = ok && tight_label;
        bound_worst = std::max(bound_worst, std::max(std::abs(ca.lower - alpha),
                                                     std::abs(ca.upper - alpha)));

        if (tight_label) {
            ++tight_count;
            const double measured_alpha =
                ca.classification == ControlledClass::parseval ? 1.0 : ca.tight_alpha;
            const auto expected = tight_controller(frame, measured_alpha);
            converse_worst = std::max(converse_worst, max_abs_diff(v, expected));
        }

        if (i % 10 == 5) {
            // appreciable perturbation must NOT classify tight
            auto bad = tight_controller(frame, alpha);
            bad(0, 0) += 1e-3;
            const auto bad_ca = controlled_analyze(ControlledFrame<double>{frame, bad});
            ok = ok && bad_ca.classification != ControlledClass::tight &&
                 bad_ca.classification != ControlledClass::parseval;
        }
    }
    ok = ok && bound_worst <= 1e-8 && converse_worst <= 1e-7 && tight_count == 102;
    report(10, "tight controllers are exactly alpha S_F^-1", ok,
           "bound residual " + fmt(bound_worst) + ", converse residual " +
               fmt(converse_worst));
}

void criterion_11_discrete_oracle() {
    Rng rng(20260820);
    double worst = 0.0;
    auto track = [&](double r) { worst = std::max(worst, r); };
    for (int i = 0; i < 40; ++i) {
        const std::size_t n = 2 + static_cast<std::size_t>(i) % 4;
        const auto frame = random_frame<double>(rng, n, 3 * n, 10.0, false);
        const auto s = frame_operator(frame);
        const auto s_eig = hermitian_eig(s);

        // factorization
        std::vector<double> alphas(n);
        for (auto& a : alphas) a = uniform_in(rng, 0.5, 2.0);
        const auto cf = controlled_from_spectrum(frame, alphas);
        const auto svf = controlled_operator(cf);
        track(max_abs_diff(svf, cf.controller * s));

        // commuting construction spectrum
        std::vector<double> expected(n);
        for (std::size_t k = 0; k < n; ++k) expected[k] = alphas[k] * s_eig.eigenvalues[k];
        std::sort(expected.begin(), expected.end());
        const auto svf_eig = hermitian_eig(svf);
        for (std::size_t k = 0; k < n; ++k)
            track(std::abs(svf_eig.eigenvalues[k] - expected[k]));

        // trace identity with the exact-sum measure
        const ControlledFrame<double> tight_cf{frame, tight_controller(frame, 1.0)};
        track(trace_identity_check(tight_cf).residual);

        // trace bound slack can be checked as an identity on commuting pairs:
        // Tr(S_VF) = sum alpha_k beta_k exactly
        double alpha_beta = 0.0;
        for (std::size_t k = 0; k < n; ++k) alpha_beta += alphas[k] * s_eig.eigenvalues[k];
        track(std::abs(real_s(trace(svf)) - alpha_beta));

        // transfer with L = S_F
        const auto moved = transfer(cf, s);
        track(max_abs_diff(controlled_operator(moved), s * svf * adjoint(s)));

        // gramian preservation under a commuting rotation (n even pairs only)
        if (n % 2 == 0) {
            std::vector<double> paired(n);
            for (std::size_t p = 0; p < n / 2; ++p)
                paired[2 * p] = paired[2 * p + 1] = uniform_in(rng, 0.5, 2.0);
            const auto v = with_spectrum(s_eig.eigenvectors, paired);
            Matrix<double> r(n, n);
            for (std::size_t p = 0; p < n / 2; ++p) {
                const double th = uniform_in(rng, 0.0, 2.0 * M_PI);
                r(2 * p, 2 * p) = std::cos(th);
                r(2 * p, 2 * p + 1) = -std::sin(th);
                r(2 * p + 1, 2 * p) = std::sin(th);
                r(2 * p + 1, 2 * p + 1) = std::cos(th);
            }
            const auto t_op = s_eig.eigenvectors * r * adjoint(s_eig.eigenvectors);
            track(gramian_preserved_by(ControlledFrame<double>{frame, v}, t_op, true).gap);
        }

        // distance decomposition residual
        const auto dd = parseval_distance_decomposition(frame, parsevalize(frame),
                                                        Matrix<double>::identity(n));
        track(std::abs(dd.residual()));

        // tightness bounds
        const auto ca = controlled_analyze(tight_cf);
        track(std::abs(ca.lower - 1.0));
        track(std::abs(ca.upper - 1.0));
    }
    report(11, "discrete-measure identities at 1e-12", worst <= 1e-12,
           "worst residual " + fmt(worst));
}

void criterion_12_discrepancy_regression() {
    const std::string spec = std::string(CFRAME_SPEC_DIR) + "/noncommuting.spec";
    const auto r = run_cli("verify " + spec);
    bool ok = r.exit_code != 0;
    ok = ok && r.output.find("commutes_with_S=false") != std::string::npos;
    ok = ok && r.output.find("classification=indefinite") != std::string::npos;

    // the duality-symmetry gap must be reported and visibly nonzero (4/3)
    double gap = 0.0;
    const auto pos = r.output.find("duality_symmetry");
    if (pos != std::string::npos) {
        const auto rpos = r.output.find("residual=", pos);
        if (rpos != std::string::npos)
            gap = std::strtod(r.output.c_str() + rpos + 9, nullptr);
    }
    ok = ok && std::abs(gap - 4.0 / 3.0) <= 1e-3 && gap > 1e-3;
    report(12, "verify pins the non-commuting controller outcomes", ok,
           "exit " + std::to_string(r.exit_code) + ", duality gap " + fmt(gap));
}

void criterion_13_cli_determinism() {
    const std::string cmd =
        "analyze " + std::string(CFRAME_SPEC_DIR) + "/moment.spec --json";
    const auto a = run_cli(cmd);
    const auto b = run_cli(cmd);
    const auto c = run_cli(cmd);
    const bool ok = a.exit_code == 0 && a.output == b.output && b.output == c.output &&
                    !a.output.empty();
    report(13, "analyze --json is byte-identical across runs", ok,
           "3 runs, " + std::to_string(a.output.size()) + " bytes each");
}

} // namespace

int main() {
    criterion_01_moment_golden();
    criterion_02_factorization();
    criterion_03_commuting_construction();
    criterion_04_trace_identity();
    criterion_05_trace_inequality();
    criterion_06_transfer();
    criterion_07_gramian_unitarity();
    criterion_08_distance_decomposition();
    criterion_09_projection();
    criterion_10_tightness();
    criterion_11_discrete_oracle();
    criterion_12_discrepancy_regression();
    criterion_13_cli_determinism();

    if (failures == 0) {
        std::printf("acceptance: all 13 criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) FAILED\n", failures);
    return 1;
}
