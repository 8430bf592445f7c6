#ifndef ALTAPPROX_EXPR_HPP
#define ALTAPPROX_EXPR_HPP

#include <cctype>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "altapprox/operators.hpp"

namespace altapprox {

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), position(pos) {}
    std::size_t position;
};

/// Expression AST over: literals, x, pi, e, unary minus, + - * / ^,
/// and sin cos ln exp sqrt abs.
struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

struct ExprNode {
    enum class Kind { number, variable, unary_minus, binary, call };

    Kind kind;
    double value = 0.0;     // number
    char op = 0;            // binary: + - * / ^
    std::string func;       // call
    ExprPtr lhs, rhs;       // rhs unused for unary/call

    static ExprPtr number(double v) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::number;
        n->value = v;
        return n;
    }
    static ExprPtr variable() {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::variable;
        return n;
    }
    static ExprPtr neg(ExprPtr a) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::unary_minus;
        n->lhs = std::move(a);
        return n;
    }
    static ExprPtr binary(char op, ExprPtr a, ExprPtr b) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::binary;
        n->op = op;
        n->lhs = std::move(a);
        n->rhs = std::move(b);
        return n;
    }
    static ExprPtr call(std::string f, ExprPtr a) {
        auto n = std::make_shared<ExprNode>();
        n->kind = Kind::call;
        n->func = std::move(f);
        n->lhs = std::move(a);
        return n;
    }
};

inline double expr_eval(const ExprPtr& e, double x) {
    switch (e->kind) {
        case ExprNode::Kind::number: return e->value;
        case ExprNode::Kind::variable: return x;
        case ExprNode::Kind::unary_minus: return -expr_eval(e->lhs, x);
        case ExprNode::Kind::binary: {
            const double a = expr_eval(e->lhs, x);
            const double b = expr_eval(e->rhs, x);
            switch (e->op) {
                case '+': return a + b;
                case '-': return a - b;
                case '*': return a * b;
                case '/': return a / b;
                case '^': return std::pow(a, b);
            }
            return 0.0;
        }
        case ExprNode::Kind::call: {
            const double a = expr_eval(e->lhs, x);
            if (e->func == "sin") return std::sin(a);
            if (e->func == "cos") return std::cos(a);
            if (e->func == "ln") return std::log(a);
            if (e->func == "exp") return std::exp(a);
            if (e->func == "sqrt") return std::sqrt(a);
            if (e->func == "abs") return std::abs(a);
            return 0.0;
        }
    }
    return 0.0;
}

/// Symbolic derivative with respect to x.
inline ExprPtr expr_derivative(const ExprPtr& e) {
    using N = ExprNode;
    switch (e->kind) {
        case N::Kind::number: return N::number(0.0);
        case N::Kind::variable: return N::number(1.0);
        case N::Kind::unary_minus: return N::neg(expr_derivative(e->lhs));
        case N::Kind::binary: {
            const ExprPtr da = expr_derivative(e->lhs);
            const ExprPtr db = expr_derivative(e->rhs);
            switch (e->op) {
                case '+': return N::binary('+', da, db);
                case '-': return N::binary('-', da, db);
                case '*':
                    return N::binary('+', N::binary('*', da, e->rhs),
                                     N::binary('*', e->lhs, db));
                case '/':
                    return N::binary(
                        '/',
                        N::binary('-', N::binary('*', da, e->rhs),
                                  N::binary('*', e->lhs, db)),
                        N::binary('^', e->rhs, N::number(2.0)));
                case '^': {
                    // constant exponent: b * a^(b-1) * a'
                    if (e->rhs->kind == N::Kind::number)
                        return N::binary(
                            '*',
                            N::binary('*', e->rhs,
                                      N::binary('^', e->lhs,
                                                N::number(e->rhs->value - 1.0))),
                            da);
                    // general: a^b * (b' ln a + b a'/a)
                    return N::binary(
                        '*', e,
                        N::binary('+', N::binary('*', db, N::call("ln", e->lhs)),
                                  N::binary('/', N::binary('*', e->rhs, da), e->lhs)));
                }
            }
            return N::number(0.0);
        }
        case N::Kind::call: {
            const ExprPtr da = expr_derivative(e->lhs);
            ExprPtr outer;
            if (e->func == "sin") outer = N::call("cos", e->lhs);
            else if (e->func == "cos") outer = N::neg(N::call("sin", e->lhs));
            else if (e->func == "ln") outer = N::binary('/', N::number(1.0), e->lhs);
            else if (e->func == "exp") outer = e;
            else if (e->func == "sqrt")
                outer = N::binary('/', N::number(1.0),
                                  N::binary('*', N::number(2.0), e));
            else if (e->func == "abs")
                outer = N::binary('/', e->lhs, e);  // sign(u), undefined at 0
            else outer = N::number(0.0);
            return N::binary('*', outer, da);
        }
    }
    return ExprNode::number(0.0);
}

inline std::string unparse(const ExprPtr& e) {
    switch (e->kind) {
        case ExprNode::Kind::number: {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.17g", e->value);
            return buf;
        }
        case ExprNode::Kind::variable: return "x";
        case ExprNode::Kind::unary_minus: return "(-" + unparse(e->lhs) + ")";
        case ExprNode::Kind::binary:
            return "(" + unparse(e->lhs) + std::string(1, e->op) + unparse(e->rhs) + ")";
        case ExprNode::Kind::call: return e->func + "(" + unparse(e->lhs) + ")";
    }
    return "";
}

inline bool expr_equal(const ExprPtr& a, const ExprPtr& b) {
    if (a->kind != b->kind) return false;
    switch (a->kind) {
        case ExprNode::Kind::number: return a->value == b->value;
        case ExprNode::Kind::variable: return true;
        case ExprNode::Kind::unary_minus: return expr_equal(a->lhs, b->lhs);
        case ExprNode::Kind::binary:
            return a->op == b->op && expr_equal(a->lhs, b->lhs) &&
                   expr_equal(a->rhs, b->rhs);
        case ExprNode::Kind::call:
            return a->func == b->func && expr_equal(a->lhs, b->lhs);
    }
    return false;
}

namespace detail {

class Parser {
public:
    explicit Parser(std::string s) : s_(std::move(s)) {}

    ExprPtr parse() {
        skip_ws();
        if (pos_ >= s_.size()) throw ParseError("empty expression", 0);
        ExprPtr e = parse_sum();
        skip_ws();
        if (pos_ < s_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    // sum  := term (('+'|'-') term)*
    // term := unary (('*'|'/') unary)*
    // unary := '-' unary | power
    // power := primary ('^' unary)?      (right-associative)
    ExprPtr parse_sum() {
        ExprPtr e = parse_term();
        for (;;) {
            skip_ws();
            if (peek() == '+' || peek() == '-') {
                const char op = s_[pos_++];
                e = ExprNode::binary(op, e, parse_term());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_term() {
        ExprPtr e = parse_unary();
        for (;;) {
            skip_ws();
            if (peek() == '*' || peek() == '/') {
                const char op = s_[pos_++];
                e = ExprNode::binary(op, e, parse_unary());
            } else {
                return e;
            }
        }
    }

    ExprPtr parse_unary() {
        skip_ws();
        if (peek() == '-') {
            ++pos_;
            return ExprNode::neg(parse_unary());
        }
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_primary();
        skip_ws();
        if (peek() == '^') {
            ++pos_;
            return ExprNode::binary('^', base, parse_unary());
        }
        return base;
    }

    ExprPtr parse_primary() {
        skip_ws();
        const char c = peek();
        if (c == '(') {
            ++pos_;
            ExprPtr e = parse_sum();
            expect(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_ident();
        throw ParseError("expected a number, identifier or '('", pos_);
    }

    ExprPtr parse_number() {
        const std::size_t start = pos_;
        std::size_t used = 0;
        double v;
        try {
            v = std::stod(s_.substr(start), &used);
        } catch (const std::exception&) {
            throw ParseError("malformed number", start);
        }
        pos_ = start + used;
        return ExprNode::number(v);
    }

    ExprPtr parse_ident() {
        const std::size_t start = pos_;
        while (pos_ < s_.size() &&
               std::isalnum(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
        const std::string name = s_.substr(start, pos_ - start);
        if (name == "x") return ExprNode::variable();
        if (name == "pi") return ExprNode::number(M_PI);
        if (name == "e") return ExprNode::number(M_E);
        if (name == "sin" || name == "cos" || name == "ln" || name == "exp" ||
            name == "sqrt" || name == "abs") {
            skip_ws();
            expect('(');
            ExprPtr arg = parse_sum();
            expect(')');
            return ExprNode::call(name, arg);
        }
        throw ParseError("unknown identifier '" + name + "'", start);
    }

    char peek() const { return pos_ < s_.size() ? s_[pos_] : '\0'; }

    void expect(char c) {
        skip_ws();
        if (peek() != c)
            throw ParseError(std::string("expected '") + c + "'", pos_);
        ++pos_;
    }

    void skip_ws() {
        while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_])))
            ++pos_;
    }

    std::string s_;
    std::size_t pos_ = 0;
};

}  // namespace detail

inline ExprPtr parse_expr(const std::string& s) { return detail::Parser(s).parse(); }

/// FuncSpec backed by the AST: evaluator plus symbolic derivative. The
/// derivative is dropped to "endpoint singular" when it blows up at 0 or 1.
inline FuncSpec func_from_expr(const ExprPtr& ast) {
    FuncSpec f;
    f.eval = [ast](double x) { return expr_eval(ast, x); };
    const ExprPtr dast = expr_derivative(ast);
    f.deriv = [dast](double x) { return expr_eval(dast, x); };
    f.f_at_0 = f.eval(0.0);
    f.f_at_1 = f.eval(1.0);
    const double d0 = expr_eval(dast, 0.0);
    const double d1 = expr_eval(dast, 1.0);
    f.deriv_endpoint_singular = !std::isfinite(d0) || !std::isfinite(d1);
    return f;
}

inline FuncSpec func_from_expr(const std::string& s) {
    return func_from_expr(parse_expr(s));
}

}  // namespace altapprox

#endif
