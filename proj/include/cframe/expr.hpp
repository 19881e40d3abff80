#pragma once

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>
#include <string_view>
#include <utility>

#include "cframe/errors.hpp"

namespace cframe {

// Arithmetic expressions in the single parameter variable `s`.
struct Expr {
    enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };
    enum class Func { sin, cos, exp, sqrt, abs };

    Kind kind;
    double number = 0.0;
    Func func = Func::sin;
    std::unique_ptr<Expr> lhs;
    std::unique_ptr<Expr> rhs;
};

using ExprPtr = std::unique_ptr<Expr>;

inline ExprPtr make_number(double v) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::number;
    e->number = v;
    return e;
}
inline ExprPtr make_variable() {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::variable;
    return e;
}
inline ExprPtr make_unary(Expr::Kind kind, ExprPtr operand) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->lhs = std::move(operand);
    return e;
}
inline ExprPtr make_binary(Expr::Kind kind, ExprPtr a, ExprPtr b) {
    auto e = std::make_unique<Expr>();
    e->kind = kind;
    e->lhs = std::move(a);
    e->rhs = std::move(b);
    return e;
}
inline ExprPtr make_call(Expr::Func f, ExprPtr arg) {
    auto e = std::make_unique<Expr>();
    e->kind = Expr::Kind::call;
    e->func = f;
    e->lhs = std::move(arg);
    return e;
}

namespace detail {

// Grammar, loosest to tightest:
//   expr  := term (('+' | '-') term)*
//   term  := unary (('*' | '/') unary)*
//   unary := '-' unary | power            (so -2^2 = -(2^2))
//   power := atom ('^' unary)?            (right associative)
//   atom  := number | 's' | name '(' expr ')' | '(' expr ')'
class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, "end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }
    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }
    bool consume(char c) {
        if (peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr parse_expr() {
        auto e = parse_term();
        while (true) {
            if (consume('+'))
                e = make_binary(Expr::Kind::add, std::move(e), parse_term());
            else if (consume('-'))
                e = make_binary(Expr::Kind::sub, std::move(e), parse_term());
            else
                return e;
        }
    }

    ExprPtr parse_term() {
        auto e = parse_unary();
        while (true) {
            if (consume('*'))
                e = make_binary(Expr::Kind::mul, std::move(e), parse_unary());
            else if (consume('/'))
                e = make_binary(Expr::Kind::div, std::move(e), parse_unary());
            else
                return e;
        }
    }

    ExprPtr parse_unary() {
        if (consume('-')) return make_unary(Expr::Kind::negate, parse_unary());
        return parse_power();
    }

    ExprPtr parse_power() {
        auto base = parse_atom();
        if (consume('^')) return make_binary(Expr::Kind::pow, std::move(base), parse_unary());
        return base;
    }

    ExprPtr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            if (!consume(')')) throw SyntaxError(pos_, "')'");
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_name();
        throw SyntaxError(pos_, "number, 's', function call, or '('");
    }

    // decimal literals with optional fraction and exponent; no hex
    ExprPtr parse_number() {
        const std::size_t start = pos_;
        auto digits = [&] {
            bool any = false;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                any = true;
            }
            return any;
        };
        const bool int_part = digits();
        bool frac_part = false;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            frac_part = digits();
        }
        if (!int_part && !frac_part) throw SyntaxError(start, "number");
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            const std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (!digits()) pos_ = mark; // bare 'e' is not an exponent
        }
        const std::string token(text_.substr(start, pos_ - start));
        return make_number(std::strtod(token.c_str(), nullptr));
    }

    ExprPtr parse_name() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        const std::string name(text_.substr(start, pos_ - start));
        if (name == "s") return make_variable();
        Expr::Func f;
        if (name == "sin")
            f = Expr::Func::sin;
        else if (name == "cos")
            f = Expr::Func::cos;
        else if (name == "exp")
            f = Expr::Func::exp;
        else if (name == "sqrt")
            f = Expr::Func::sqrt;
        else if (name == "abs")
            f = Expr::Func::abs;
        else
            throw UnknownFunction(name);
        if (!consume('(')) throw SyntaxError(pos_, "'(' after function name");
        auto arg = parse_expr();
        if (!consume(')')) throw SyntaxError(pos_, "')'");
        return make_call(f, std::move(arg));
    }
};

} // namespace detail

inline ExprPtr parse_expr(std::string_view text) { return detail::ExprParser(text).run(); }

inline double evaluate(const Expr& e, double s) {
    switch (e.kind) {
        case Expr::Kind::number: return e.number;
        case Expr::Kind::variable: return s;
        case Expr::Kind::negate: return -evaluate(*e.lhs, s);
        case Expr::Kind::add: return evaluate(*e.lhs, s) + evaluate(*e.rhs, s);
        case Expr::Kind::sub: return evaluate(*e.lhs, s) - evaluate(*e.rhs, s);
        case Expr::Kind::mul: return evaluate(*e.lhs, s) * evaluate(*e.rhs, s);
        case Expr::Kind::div: {
            const double denom = evaluate(*e.rhs, s);
            if (denom == 0.0) throw DivisionByZero(s);
            return evaluate(*e.lhs, s) / denom;
        }
        case Expr::Kind::pow: {
            const double base = evaluate(*e.lhs, s);
            const double exponent = evaluate(*e.rhs, s);
            if (base < 0.0 && exponent != std::floor(exponent))
                throw DomainError("fractional power of a negative base at s = " +
                                  std::to_string(s));
            if (base == 0.0 && exponent < 0.0) throw DivisionByZero(s);
            return std::pow(base, exponent);
        }
        case Expr::Kind::call: {
            const double x = evaluate(*e.lhs, s);
            switch (e.func) {
                case Expr::Func::sin: return std::sin(x);
                case Expr::Func::cos: return std::cos(x);
                case Expr::Func::exp: return std::exp(x);
                case Expr::Func::sqrt:
                    if (x < 0.0)
                        throw DomainError("sqrt of a negative value at s = " + std::to_string(s));
                    return std::sqrt(x);
                case Expr::Func::abs: return std::abs(x);
            }
            return 0.0;
        }
    }
    return 0.0;
}

inline const char* to_string(Expr::Func f) {
    switch (f) {
        case Expr::Func::sin: return "sin";
        case Expr::Func::cos: return "cos";
        case Expr::Func::exp: return "exp";
        case Expr::Func::sqrt: return "sqrt";
        case Expr::Func::abs: return "abs";
    }
    return "?";
}

// Fully parenthesized; reparsing yields a structurally equal tree.
inline std::string print_expr(const Expr& e) {
    switch (e.kind) {
        case Expr::Kind::number: {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            return buf;
        }
        case Expr::Kind::variable: return "s";
        case Expr::Kind::negate: return "(-" + print_expr(*e.lhs) + ")";
        case Expr::Kind::add: return "(" + print_expr(*e.lhs) + " + " + print_expr(*e.rhs) + ")";
        case Expr::Kind::sub: return "(" + print_expr(*e.lhs) + " - " + print_expr(*e.rhs) + ")";
        case Expr::Kind::mul: return "(" + print_expr(*e.lhs) + " * " + print_expr(*e.rhs) + ")";
        case Expr::Kind::div: return "(" + print_expr(*e.lhs) + " / " + print_expr(*e.rhs) + ")";
        case Expr::Kind::pow: return "(" + print_expr(*e.lhs) + "^" + print_expr(*e.rhs) + ")";
        case Expr::Kind::call: return std::string(to_string(e.func)) + "(" + print_expr(*e.lhs) + ")";
    }
    return "";
}

inline bool structurally_equal(const Expr& a, const Expr& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case Expr::Kind::number: return a.number == b.number;
        case Expr::Kind::variable: return true;
        case Expr::Kind::negate: return structurally_equal(*a.lhs, *b.lhs);
        case Expr::Kind::call:
            return a.func == b.func && structurally_equal(*a.lhs, *b.lhs);
        default:
            return structurally_equal(*a.lhs, *b.lhs) && structurally_equal(*a.rhs, *b.rhs);
    }
}

} // namespace cframe
