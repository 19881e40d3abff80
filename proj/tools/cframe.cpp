// cframe: analyze, dualize, and verify sampled continuous frames described
// by spec files.

#include <cstdio>
#include <cstdlib>
#include <functional>
#include <iostream>
#include <string>
#include <variant>

#include "CLI11.hpp"
#include "json.hpp"

#include "cframe/cframe.hpp"

namespace {

using nlohmann::ordered_json;
using namespace cframe;

struct Options {
    std::string spec_path;
    bool json = false;
    bool lenient = false;
    bool parseval = false;
    bool check_projection = false;
    double report_tol = 1e-8;
};

ClassificationMode mode_of(const Options& opt) {
    return opt.lenient ? ClassificationMode::lenient : ClassificationMode::strict;
}

// JSON numbers carry 15 significant digits.
double round15(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    return std::strtod(buf, nullptr);
}

ordered_json scalar_json(double v) { return round15(v); }
ordered_json scalar_json(const Complex& z) {
    return ordered_json::array({round15(z.real()), round15(z.imag())});
}

template <ScalarType T>
ordered_json matrix_json(const Matrix<T>& m) {
    ordered_json rows = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(scalar_json(m(i, j)));
        rows.push_back(row);
    }
    return rows;
}

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}
std::string fmt(const Complex& z) {
    char buf[96];
    if (z.imag() == 0.0)
        std::snprintf(buf, sizeof buf, "%.6g", z.real());
    else
        std::snprintf(buf, sizeof buf, "%.6g%+.6gi", z.real(), z.imag());
    return buf;
}

template <ScalarType T>
void print_matrix(std::ostream& out, const Matrix<T>& m, const char* indent = "  ") {
    for (std::size_t i = 0; i < m.rows(); ++i) {
        out << indent << "[";
        for (std::size_t j = 0; j < m.cols(); ++j) {
            if (j) out << "  ";
            out << fmt(m(i, j));
        }
        out << "]\n";
    }
}

template <ScalarType T>
int run_analyze(const FrameSpec& spec, const FrameBundle<T>& bundle, const Options& opt) {
    (void)spec;
    const auto fa = analyze(bundle.frame);

    ordered_json out;
    std::string classification;
    double lower = fa.lower, upper = fa.upper;
    bool has_v = bundle.controller.has_value();

    ControlledAnalysis<T> ca;
    if (has_v) {
        ca = controlled_analyze(ControlledFrame<T>{bundle.frame, *bundle.controller},
                                mode_of(opt));
        classification = to_string(ca.classification);
        lower = ca.lower;
        upper = ca.upper;
    } else {
        classification = to_string(fa.classification);
    }

    if (opt.json) {
        out["frame_operator"] = matrix_json(fa.frame_operator);
        out["controlled_operator"] =
            has_v ? matrix_json(ca.controlled_operator) : ordered_json(nullptr);
        out["lower_bound"] = round15(lower);
        out["upper_bound"] = round15(upper);
        out["condition"] = lower > 0.0 ? ordered_json(round15(upper / lower))
                                       : ordered_json(nullptr);
        out["classification"] = classification;
        out["commutes_with_S"] = has_v ? ordered_json(ca.commutes_with_S) : ordered_json(nullptr);
        out["quadratic_form_real"] =
            has_v ? ordered_json(ca.quadratic_form_real) : ordered_json(nullptr);
        out["tight_alpha"] = (has_v && ca.tight_alpha != 0.0)
                                 ? ordered_json(round15(ca.tight_alpha))
                                 : (!has_v && fa.tight_alpha != 0.0
                                        ? ordered_json(round15(fa.tight_alpha))
                                        : ordered_json(nullptr));
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (!bundle.label.empty()) std::cout << "label: " << bundle.label << "\n";
    std::cout << "dim: " << bundle.frame.dim << "  nodes: " << bundle.frame.space.size()
              << "  field: " << (is_complex_v<T> ? "complex" : "real") << "\n";
    std::cout << "frame operator S_F:\n";
    print_matrix(std::cout, fa.frame_operator);
    std::cout << "frame bounds: A = " << fmt(fa.lower) << "  B = " << fmt(fa.upper)
              << "  condition = " << fmt(fa.condition) << "\n";
    std::cout << "frame classification: " << to_string(fa.classification) << "\n";
    if (has_v) {
        std::cout << "controlled operator S_VF:\n";
        print_matrix(std::cout, ca.controlled_operator);
        std::cout << "controlled bounds: A = " << fmt(ca.lower) << "  B = " << fmt(ca.upper)
                  << "\n";
        std::cout << "controlled classification: " << to_string(ca.classification) << "\n";
        std::cout << "quadratic form real: " << (ca.quadratic_form_real ? "true" : "false")
                  << "  skew norm: " << fmt(ca.skew_norm) << "\n";
        std::cout << "commutes with S_F: " << (ca.commutes_with_S ? "true" : "false")
                  << "  commutator: " << fmt(ca.commutator) << "\n";
    }
    return 0;
}

template <ScalarType T>
int run_dual(const FrameSpec& spec, const FrameBundle<T>& bundle, const Options& opt) {
    SampledFrame<T> dual;
    std::string suffix;
    if (opt.parseval) {
        dual = parsevalize(bundle.frame);
        suffix = "-parseval";
    } else if (bundle.controller) {
        dual = controlled_dual(ControlledFrame<T>{bundle.frame, *bundle.controller},
                               mode_of(opt));
        suffix = "-controlled-dual";
    } else {
        dual = canonical_dual(bundle.frame);
        suffix = "-dual";
    }
    const std::string label = bundle.label.empty() ? "" : bundle.label + suffix;
    std::cout << emit_samples_spec(spec, label, dual.samples);
    return 0;
}

template <ScalarType T>
int run_gramian(const FrameSpec& spec, const FrameBundle<T>& bundle, const Options& opt) {
    (void)spec;
    const Matrix<T> v = bundle.controller ? *bundle.controller
                                          : Matrix<T>::identity(bundle.frame.dim);
    const auto g = gramian(ControlledFrame<T>{bundle.frame, v});
    double projection_residual = -1.0;
    if (opt.check_projection) projection_residual = max_abs_diff(g * g, g);

    if (opt.json) {
        ordered_json out;
        out["gramian"] = matrix_json(g);
        out["projection_residual"] = opt.check_projection
                                         ? ordered_json(round15(projection_residual))
                                         : ordered_json(nullptr);
        std::cout << out.dump(2) << "\n";
        return 0;
    }
    std::cout << "V-Gramian (" << g.rows() << " x " << g.cols() << "):\n";
    print_matrix(std::cout, g);
    if (opt.check_projection)
        std::cout << "projection residual |G^2 - G|_max = " << fmt(projection_residual) << "\n";
    return 0;
}

template <ScalarType T>
int run_verify(const FrameSpec& spec, const FrameBundle<T>& bundle, const Options& opt) {
    (void)spec;
    const auto results = run_verification(bundle, mode_of(opt), opt.report_tol);
    if (opt.json) {
        ordered_json checks = ordered_json::array();
        for (const auto& r : results) {
            ordered_json c;
            c["name"] = r.name;
            c["status"] = to_string(r.status);
            c["residual"] = round15(r.residual);
            c["detail"] = r.detail;
            checks.push_back(c);
        }
        ordered_json out;
        out["checks"] = checks;
        out["passed"] = all_passed(results);
        std::cout << out.dump(2) << "\n";
    } else {
        for (const auto& r : results) {
            char line[256];
            std::snprintf(line, sizeof line, "%-4s %-32s residual=%-12.4g %s",
                          to_string(r.status), r.name.c_str(), r.residual, r.detail.c_str());
            std::cout << line << "\n";
        }
        std::cout << (all_passed(results) ? "verification passed" : "verification FAILED")
                  << "\n";
    }
    return all_passed(results) ? 0 : 1;
}

int dispatch(const Options& opt,
             const std::function<int(const FrameSpec&, const AnyBundle&)>& body) {
    try {
        const FrameSpec spec = load_spec_file(opt.spec_path);
        const AnyBundle bundle = materialize(spec);
        return body(spec, bundle);
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical error: " << e.what() << "\n";
        return 2;
    }
}

void add_common(CLI::App* cmd, Options& opt, bool with_json = true) {
    cmd->add_option("spec", opt.spec_path, "frame spec file")->required();
    if (with_json) cmd->add_flag("--json", opt.json, "machine-readable JSON output");
    cmd->add_flag("--lenient", opt.lenient,
                  "classify on the Hermitian part only (default: strict)");
    cmd->add_flag("--strict", [&opt](std::int64_t) { opt.lenient = false; },
                  "require a real quadratic form for controlled positivity (default)");
    cmd->add_option("--tol", opt.report_tol,
                    "report tolerance for verification residuals (library tolerances are fixed)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"construct and analyze controlled continuous frames at quadrature resolution"};
    app.require_subcommand(1);
    Options opt;

    auto* analyze_cmd = app.add_subcommand("analyze", "frame operator, bounds, classification");
    add_common(analyze_cmd, opt);

    auto* dual_cmd = app.add_subcommand("dual", "emit the canonical or controlled dual as a spec");
    add_common(dual_cmd, opt, false);
    dual_cmd->add_flag("--parseval", opt.parseval, "emit S^{-1/2} F instead of the dual");

    auto* pars_cmd = app.add_subcommand("parsevalize", "emit S^{-1/2} F as a spec");
    add_common(pars_cmd, opt, false);

    auto* gram_cmd = app.add_subcommand("gramian", "print the V-Gramian matrix");
    add_common(gram_cmd, opt);
    gram_cmd->add_flag("--check-projection", opt.check_projection,
                       "also report |G^2 - G|_max");

    auto* verify_cmd = app.add_subcommand("verify", "run every applicable identity check");
    add_common(verify_cmd, opt);

    CLI11_PARSE(app, argc, argv);

    if (analyze_cmd->parsed())
        return dispatch(opt, [&](const FrameSpec& spec, const AnyBundle& bundle) {
            return std::visit([&](const auto& b) { return run_analyze(spec, b, opt); }, bundle);
        });
    if (dual_cmd->parsed())
        return dispatch(opt, [&](const FrameSpec& spec, const AnyBundle& bundle) {
            return std::visit([&](const auto& b) { return run_dual(spec, b, opt); }, bundle);
        });
    if (pars_cmd->parsed()) {
        opt.parseval = true;
        return dispatch(opt, [&](const FrameSpec& spec, const AnyBundle& bundle) {
            return std::visit([&](const auto& b) { return run_dual(spec, b, opt); }, bundle);
        });
    }
    if (gram_cmd->parsed())
        return dispatch(opt, [&](const FrameSpec& spec, const AnyBundle& bundle) {
            return std::visit([&](const auto& b) { return run_gramian(spec, b, opt); }, bundle);
        });
    if (verify_cmd->parsed())
        return dispatch(opt, [&](const FrameSpec& spec, const AnyBundle& bundle) {
            return std::visit([&](const auto& b) { return run_verify(spec, b, opt); }, bundle);
        });
    return 1;
}
