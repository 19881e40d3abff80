#pragma once

#include <cctype>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "cframe/errors.hpp"
#include "cframe/expr.hpp"
#include "cframe/frame.hpp"
#include "cframe/matrix.hpp"
#include "cframe/measure.hpp"
#include "cframe/scalar.hpp"

namespace cframe {

// Parsed description of a frame family, before any numerics run.
struct FrameSpec {
    enum class MeasureKind { gauss, uniform, discrete };

    std::size_t dim = 0;
    Field field = Field::real;
    std::string label;

    std::vector<std::string> components;             // expressions in s, or
    std::vector<std::vector<Complex>> samples;       // one row per node

    MeasureKind measure_kind = MeasureKind::gauss;
    double interval_a = 0.0, interval_b = 1.0;
    std::size_t order = 0;
    std::vector<double> points, masses;

    std::optional<std::vector<std::vector<Complex>>> controller;

    bool has_expressions() const { return !components.empty(); }
};

namespace specfile {

struct Cursor {
    std::string_view text;
    std::size_t pos = 0;
    std::size_t line = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }
    char peek() {
        skip_ws();
        return pos < text.size() ? text[pos] : '\0';
    }
    void expect(char c, const char* what) {
        if (peek() != c) throw ParseError(line, std::string("expected ") + what);
        ++pos;
    }
    bool done() {
        skip_ws();
        return pos >= text.size();
    }
};

// decimal literal with optional sign, fraction, and exponent; no hex/inf/nan
inline double parse_real(Cursor& cur) {
    cur.skip_ws();
    const std::size_t start = cur.pos;
    auto digits = [&] {
        bool any = false;
        while (cur.pos < cur.text.size() &&
               std::isdigit(static_cast<unsigned char>(cur.text[cur.pos]))) {
            ++cur.pos;
            any = true;
        }
        return any;
    };
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '+' || cur.text[cur.pos] == '-'))
        ++cur.pos;
    const bool int_part = digits();
    bool frac_part = false;
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == '.') {
        ++cur.pos;
        frac_part = digits();
    }
    if (!int_part && !frac_part) {
        cur.pos = start;
        throw ParseError(cur.line, "expected a number");
    }
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == 'e' || cur.text[cur.pos] == 'E')) {
        const std::size_t mark = cur.pos;
        ++cur.pos;
        if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '+' || cur.text[cur.pos] == '-'))
            ++cur.pos;
        if (!digits()) cur.pos = mark;
    }
    const std::string token(cur.text.substr(start, cur.pos - start));
    return std::strtod(token.c_str(), nullptr);
}

// scalar literal: 1.5  |  2i  |  1.5+0.5i  |  3-2i   ('i' only for complex field)
inline Complex parse_scalar(Cursor& cur, Field field) {
    const double first = parse_real(cur);
    if (cur.pos < cur.text.size() && cur.text[cur.pos] == 'i') {
        if (field == Field::real) throw ParseError(cur.line, "imaginary literal in a real-field spec");
        ++cur.pos;
        return Complex(0.0, first);
    }
    if (cur.pos < cur.text.size() && (cur.text[cur.pos] == '+' || cur.text[cur.pos] == '-')) {
        const std::size_t mark = cur.pos;
        const double second = parse_real(cur);
        if (cur.pos < cur.text.size() && cur.text[cur.pos] == 'i') {
            if (field == Field::real)
                throw ParseError(cur.line, "imaginary literal in a real-field spec");
            ++cur.pos;
            return Complex(first, second);
        }
        cur.pos = mark; // not a complex literal; leave the sign for the caller
    }
    return Complex(first, 0.0);
}

inline std::vector<double> parse_real_array(Cursor& cur) {
    std::vector<double> out;
    cur.expect('[', "'['");
    if (cur.peek() != ']') {
        out.push_back(parse_real(cur));
        while (cur.peek() == ',') {
            ++cur.pos;
            out.push_back(parse_real(cur));
        }
    }
    cur.expect(']', "']'");
    return out;
}

inline std::vector<Complex> parse_scalar_array(Cursor& cur, Field field) {
    std::vector<Complex> out;
    cur.expect('[', "'['");
    if (cur.peek() != ']') {
        out.push_back(parse_scalar(cur, field));
        while (cur.peek() == ',') {
            ++cur.pos;
            out.push_back(parse_scalar(cur, field));
        }
    }
    cur.expect(']', "']'");
    return out;
}

inline std::vector<std::vector<Complex>> parse_matrix(Cursor& cur, Field field) {
    std::vector<std::vector<Complex>> out;
    cur.expect('[', "'['");
    if (cur.peek() != ']') {
        out.push_back(parse_scalar_array(cur, field));
        while (cur.peek() == ',') {
            ++cur.pos;
            out.push_back(parse_scalar_array(cur, field));
        }
    }
    cur.expect(']', "']'");
    return out;
}

inline std::string parse_quoted(Cursor& cur) {
    cur.expect('"', "'\"'");
    std::string out;
    while (cur.pos < cur.text.size() && cur.text[cur.pos] != '"') out += cur.text[cur.pos++];
    if (cur.pos >= cur.text.size()) throw ParseError(cur.line, "unterminated string");
    ++cur.pos;
    return out;
}

inline std::vector<std::string> parse_string_array(Cursor& cur) {
    std::vector<std::string> out;
    cur.expect('[', "'['");
    if (cur.peek() != ']') {
        out.push_back(parse_quoted(cur));
        while (cur.peek() == ',') {
            ++cur.pos;
            out.push_back(parse_quoted(cur));
        }
    }
    cur.expect(']', "']'");
    return out;
}

inline void expect_consumed(Cursor& cur) {
    if (!cur.done()) throw ParseError(cur.line, "trailing characters after value");
}

// '#' starts a comment unless inside a quoted string
inline std::string strip_comment(const std::string& raw) {
    bool quoted = false;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        if (raw[i] == '"') quoted = !quoted;
        if (raw[i] == '#' && !quoted) return raw.substr(0, i);
    }
    return raw;
}

inline std::string trim(const std::string& s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

} // namespace specfile

inline void validate_spec(const FrameSpec& spec) {
    if (spec.dim == 0) throw ValidationError("dim", "must be a positive integer");
    const bool exprs = !spec.components.empty();
    const bool rows = !spec.samples.empty();
    if (exprs == rows)
        throw ValidationError("components", "exactly one of components or samples is required");
    if (exprs && spec.field == Field::complex)
        throw ValidationError("components",
                              "complex frames require explicit samples, not expressions");
    if (exprs && spec.components.size() != spec.dim)
        throw ValidationError("components", "need exactly dim expressions");
    if (rows)
        for (const auto& row : spec.samples)
            if (row.size() != spec.dim) throw ValidationError("samples", "rows must have dim entries");

    std::size_t node_count = 0;
    switch (spec.measure_kind) {
        case FrameSpec::MeasureKind::gauss:
        case FrameSpec::MeasureKind::uniform:
            if (!(spec.interval_a < spec.interval_b))
                throw ValidationError("interval", "must satisfy a < b");
            if (spec.order < 1) throw ValidationError("order", "must be a positive integer");
            node_count = spec.order;
            break;
        case FrameSpec::MeasureKind::discrete:
            if (spec.points.empty()) throw ValidationError("points", "must be non-empty");
            if (spec.points.size() != spec.masses.size())
                throw ValidationError("masses", "need one mass per point");
            for (double m : spec.masses)
                if (!(m > 0.0)) throw ValidationError("masses", "must all be positive");
            node_count = spec.points.size();
            break;
    }
    if (rows && spec.samples.size() != node_count)
        throw ValidationError("samples", "need one row per measure node");
    if (spec.controller) {
        if (spec.controller->size() != spec.dim)
            throw ValidationError("V", "must be a dim x dim matrix");
        for (const auto& row : *spec.controller)
            if (row.size() != spec.dim) throw ValidationError("V", "must be a dim x dim matrix");
    }
}

inline FrameSpec load_spec_text(const std::string& text) {
    FrameSpec spec;
    enum class Section { none, frame, measure, controller } section = Section::none;
    bool saw_field_tag = false, saw_kind = false;
    std::vector<std::pair<std::size_t, std::string>> deferred_scalars; // field-dependent values

    std::istringstream in(text);
    std::string raw;
    std::size_t lineno = 0;
    bool saw_frame_section = false, saw_measure_section = false;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::string stripped = specfile::trim(specfile::strip_comment(raw));
        if (stripped.empty()) continue;
        if (stripped.front() == '[') {
            if (stripped == "[frame]") {
                section = Section::frame;
                saw_frame_section = true;
            } else if (stripped == "[measure]") {
                section = Section::measure;
                saw_measure_section = true;
            } else if (stripped == "[controller]") {
                section = Section::controller;
            } else {
                throw ParseError(lineno, "unknown section " + stripped);
            }
            continue;
        }
        const auto eq = stripped.find('=');
        if (eq == std::string::npos) throw ParseError(lineno, "expected key = value");
        const std::string key = specfile::trim(stripped.substr(0, eq));
        const std::string value = specfile::trim(stripped.substr(eq + 1));
        specfile::Cursor cur{value, 0, lineno};

        switch (section) {
            case Section::none:
                throw ParseError(lineno, "key outside any section");
            case Section::frame:
                if (key == "dim") {
                    const double v = specfile::parse_real(cur);
                    specfile::expect_consumed(cur);
                    if (v < 1.0 || v != std::floor(v))
                        throw ValidationError("dim", "must be a positive integer");
                    spec.dim = static_cast<std::size_t>(v);
                } else if (key == "field") {
                    if (value == "real")
                        spec.field = Field::real;
                    else if (value == "complex")
                        spec.field = Field::complex;
                    else
                        throw ValidationError("field", "must be real or complex");
                    saw_field_tag = true;
                } else if (key == "label") {
                    spec.label = specfile::parse_quoted(cur);
                    specfile::expect_consumed(cur);
                } else if (key == "components") {
                    spec.components = specfile::parse_string_array(cur);
                    specfile::expect_consumed(cur);
                } else if (key == "samples") {
                    deferred_scalars.emplace_back(lineno, "samples:" + value);
                } else {
                    throw ParseError(lineno, "unknown key '" + key + "' in [frame]");
                }
                break;
            case Section::measure:
                if (key == "kind") {
                    if (value == "gauss")
                        spec.measure_kind = FrameSpec::MeasureKind::gauss;
                    else if (value == "uniform")
                        spec.measure_kind = FrameSpec::MeasureKind::uniform;
                    else if (value == "discrete")
                        spec.measure_kind = FrameSpec::MeasureKind::discrete;
                    else
                        throw ValidationError("kind", "must be gauss, uniform, or discrete");
                    saw_kind = true;
                } else if (key == "interval") {
                    const auto iv = specfile::parse_real_array(cur);
                    specfile::expect_consumed(cur);
                    if (iv.size() != 2) throw ValidationError("interval", "needs two endpoints");
                    spec.interval_a = iv[0];
                    spec.interval_b = iv[1];
                } else if (key == "order") {
                    const double v = specfile::parse_real(cur);
                    specfile::expect_consumed(cur);
                    if (v < 1.0 || v != std::floor(v))
                        throw ValidationError("order", "must be a positive integer");
                    spec.order = static_cast<std::size_t>(v);
                } else if (key == "points") {
                    spec.points = specfile::parse_real_array(cur);
                    specfile::expect_consumed(cur);
                } else if (key == "masses") {
                    spec.masses = specfile::parse_real_array(cur);
                    specfile::expect_consumed(cur);
                } else {
                    throw ParseError(lineno, "unknown key '" + key + "' in [measure]");
                }
                break;
            case Section::controller:
                if (key == "V") {
                    deferred_scalars.emplace_back(lineno, "V:" + value);
                } else {
                    throw ParseError(lineno, "unknown key '" + key + "' in [controller]");
                }
                break;
        }
    }
    if (!saw_frame_section) throw ValidationError("frame", "missing [frame] section");
    if (!saw_measure_section) throw ValidationError("measure", "missing [measure] section");
    if (!saw_kind) throw ValidationError("kind", "missing measure kind");
    (void)saw_field_tag; // field defaults to real

    // samples and V can hold complex literals, so they parse after the field
    // tag is known regardless of key order
    for (const auto& [at, tagged] : deferred_scalars) {
        const auto colon = tagged.find(':');
        const std::string which = tagged.substr(0, colon);
        const std::string value = tagged.substr(colon + 1);
        specfile::Cursor cur{value, 0, at};
        auto rows = specfile::parse_matrix(cur, spec.field);
        specfile::expect_consumed(cur);
        if (which == "samples")
            spec.samples = std::move(rows);
        else
            spec.controller = std::move(rows);
    }

    validate_spec(spec);
    return spec;
}

inline FrameSpec load_spec_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(0, "cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return load_spec_text(buf.str());
}

// A materialized spec: the sampled frame plus the optional controller.
template <ScalarType T>
struct FrameBundle {
    SampledFrame<T> frame;
    std::optional<Matrix<T>> controller;
    std::string label;
};

using AnyBundle = std::variant<FrameBundle<double>, FrameBundle<Complex>>;

namespace detail {

inline MeasureSpace build_measure(const FrameSpec& spec) {
    switch (spec.measure_kind) {
        case FrameSpec::MeasureKind::gauss:
            return gauss_legendre(spec.interval_a, spec.interval_b, spec.order);
        case FrameSpec::MeasureKind::uniform:
            return uniform(spec.interval_a, spec.interval_b, spec.order);
        case FrameSpec::MeasureKind::discrete:
            return discrete(spec.points, spec.masses);
    }
    throw ValidationError("kind", "unreachable");
}

template <ScalarType T>
T narrow_scalar(const Complex& z);
template <>
inline double narrow_scalar<double>(const Complex& z) { return z.real(); }
template <>
inline Complex narrow_scalar<Complex>(const Complex& z) { return z; }

template <ScalarType T>
FrameBundle<T> materialize_as(const FrameSpec& spec) {
    MeasureSpace space = build_measure(spec);
    std::vector<Vector<T>> samples;
    samples.reserve(space.size());
    if (spec.has_expressions()) {
        std::vector<ExprPtr> exprs;
        exprs.reserve(spec.components.size());
        for (const auto& text : spec.components) exprs.push_back(parse_expr(text));
        for (double node : space.nodes) {
            Vector<T> v(spec.dim);
            for (std::size_t k = 0; k < spec.dim; ++k) {
                const double x = evaluate(*exprs[k], node);
                if (!std::isfinite(x))
                    throw DomainError("component " + std::to_string(k) +
                                      " is non-finite at s = " + std::to_string(node));
                v[k] = T{x};
            }
            samples.push_back(std::move(v));
        }
    } else {
        for (const auto& row : spec.samples) {
            Vector<T> v(spec.dim);
            for (std::size_t k = 0; k < spec.dim; ++k) v[k] = narrow_scalar<T>(row[k]);
            samples.push_back(std::move(v));
        }
    }
    FrameBundle<T> bundle{make_frame(std::move(space), std::move(samples)), std::nullopt,
                          spec.label};
    if (spec.controller) {
        Matrix<T> v(spec.dim, spec.dim);
        for (std::size_t i = 0; i < spec.dim; ++i)
            for (std::size_t j = 0; j < spec.dim; ++j)
                v(i, j) = narrow_scalar<T>((*spec.controller)[i][j]);
        bundle.controller = std::move(v);
    }
    return bundle;
}

inline std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <ScalarType T>
std::string format_scalar(const T& v) {
    if constexpr (is_complex_v<T>) {
        const Complex z(v);
        std::string out = format_double(z.real());
        if (z.imag() >= 0.0 || std::isnan(z.imag())) out += "+";
        out += format_double(z.imag()) + "i";
        return out;
    } else {
        return format_double(v);
    }
}

} // namespace detail

inline AnyBundle materialize(const FrameSpec& spec) {
    if (spec.field == Field::complex) return detail::materialize_as<Complex>(spec);
    return detail::materialize_as<double>(spec);
}

// Serialize `samples` (and optionally a controller) over the measure of
// `base` as an explicit-samples document that load_spec_text accepts.
template <ScalarType T>
std::string emit_samples_spec(const FrameSpec& base, const std::string& label,
                              const std::vector<Vector<T>>& samples,
                              const std::optional<Matrix<T>>& controller = std::nullopt) {
    std::ostringstream out;
    out << "[frame]\n";
    out << "dim = " << base.dim << "\n";
    out << "field = " << (field_of<T>() == Field::complex ? "complex" : "real") << "\n";
    if (!label.empty()) out << "label = \"" << label << "\"\n";
    out << "samples = [";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        if (i) out << ", ";
        out << "[";
        for (std::size_t k = 0; k < samples[i].dim(); ++k) {
            if (k) out << ", ";
            out << detail::format_scalar(samples[i][k]);
        }
        out << "]";
    }
    out << "]\n";
    out << "[measure]\n";
    switch (base.measure_kind) {
        case FrameSpec::MeasureKind::gauss:
            out << "kind = gauss\n";
            out << "interval = [" << detail::format_double(base.interval_a) << ", "
                << detail::format_double(base.interval_b) << "]\n";
            out << "order = " << base.order << "\n";
            break;
        case FrameSpec::MeasureKind::uniform:
            out << "kind = uniform\n";
            out << "interval = [" << detail::format_double(base.interval_a) << ", "
                << detail::format_double(base.interval_b) << "]\n";
            out << "order = " << base.order << "\n";
            break;
        case FrameSpec::MeasureKind::discrete: {
            out << "kind = discrete\n";
            out << "points = [";
            for (std::size_t i = 0; i < base.points.size(); ++i) {
                if (i) out << ", ";
                out << detail::format_double(base.points[i]);
            }
            out << "]\n";
            out << "masses = [";
            for (std::size_t i = 0; i < base.masses.size(); ++i) {
                if (i) out << ", ";
                out << detail::format_double(base.masses[i]);
            }
            out << "]\n";
            break;
        }
    }
    if (controller) {
        out << "[controller]\n";
        out << "V = [";
        for (std::size_t i = 0; i < controller->rows(); ++i) {
            if (i) out << ", ";
            out << "[";
            for (std::size_t j = 0; j < controller->cols(); ++j) {
                if (j) out << ", ";
                out << detail::format_scalar((*controller)(i, j));
            }
            out << "]";
        }
        out << "]\n";
    }
    return out.str();
}

} // namespace cframe
