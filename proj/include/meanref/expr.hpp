#pragma once

// Minimal expression parser/evaluator for CLI-supplied real functions of one
// variable. Grammar (EBNF):
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { ("*" | "/") unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" unary ] ;            (right-associative)
//   primary = number | "x" | "pi" | "e"
//           | func "(" expr ")" | "(" expr ")" ;
//   func    = "exp" | "ln" | "sqrt" | "sin" | "cos" | "abs" ;
//
// No implicit multiplication. Whitespace is insignificant. ln/sqrt of a
// negative argument and pow with negative base and non-integer exponent are
// EvalErrors rather than NaNs; non-finite results raise OverflowError.

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <variant>

#include "meanref/errors.hpp"
#include "meanref/detail/util.hpp"

namespace meanref {

enum class UnaryOp { neg, exp, ln, sqrt, sin, cos, abs };
enum class BinaryOp { add, sub, mul, div, pow };

class ExprAst {
public:
    struct Constant { double value; };
    struct Variable {};
    struct Unary {
        UnaryOp op;
        std::unique_ptr<ExprAst> child;
    };
    struct Binary {
        BinaryOp op;
        std::unique_ptr<ExprAst> lhs;
        std::unique_ptr<ExprAst> rhs;
    };
    using Node = std::variant<Constant, Variable, Unary, Binary>;

    explicit ExprAst(Node n) : node_(std::move(n)) {}
    const Node& node() const noexcept { return node_; }

private:
    Node node_;
};

namespace detail {

inline const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::neg: return "neg";
        case UnaryOp::exp: return "exp";
        case UnaryOp::ln: return "ln";
        case UnaryOp::sqrt: return "sqrt";
        case UnaryOp::sin: return "sin";
        case UnaryOp::cos: return "cos";
        default: return "abs";
    }
}

class ExprParser {
public:
    explicit ExprParser(std::string_view text) : text_(text) {}

    std::unique_ptr<ExprAst> parse() {
        skip_ws();
        if (pos_ >= text_.size()) throw ParseError("empty expression", 0, "expression");
        auto e = parse_expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("trailing characters", pos_, "end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek_char(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    bool accept_char(char c) {
        if (peek_char(c)) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect_char(char c) {
        if (!accept_char(c))
            throw ParseError("unexpected input", pos_, std::string("'") + c + "'");
    }

    std::unique_ptr<ExprAst> parse_expr() {
        auto lhs = parse_term();
        for (;;) {
            if (accept_char('+')) {
                auto rhs = parse_term();
                lhs = std::make_unique<ExprAst>(
                    ExprAst::Binary{BinaryOp::add, std::move(lhs), std::move(rhs)});
            } else if (accept_char('-')) {
                auto rhs = parse_term();
                lhs = std::make_unique<ExprAst>(
                    ExprAst::Binary{BinaryOp::sub, std::move(lhs), std::move(rhs)});
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<ExprAst> parse_term() {
        auto lhs = parse_unary();
        for (;;) {
            if (accept_char('*')) {
                auto rhs = parse_unary();
                lhs = std::make_unique<ExprAst>(
                    ExprAst::Binary{BinaryOp::mul, std::move(lhs), std::move(rhs)});
            } else if (accept_char('/')) {
                auto rhs = parse_unary();
                lhs = std::make_unique<ExprAst>(
                    ExprAst::Binary{BinaryOp::div, std::move(lhs), std::move(rhs)});
            } else {
                return lhs;
            }
        }
    }

    std::unique_ptr<ExprAst> parse_unary() {
        if (accept_char('-'))
            return std::make_unique<ExprAst>(ExprAst::Unary{UnaryOp::neg, parse_unary()});
        return parse_power();
    }

    std::unique_ptr<ExprAst> parse_power() {
        auto base = parse_primary();
        if (accept_char('^')) {
            auto exponent = parse_unary();  // right-associative, binds tighter than unary minus
            return std::make_unique<ExprAst>(
                ExprAst::Binary{BinaryOp::pow, std::move(base), std::move(exponent)});
        }
        return base;
    }

    std::unique_ptr<ExprAst> parse_primary() {
        skip_ws();
        if (pos_ >= text_.size())
            throw ParseError("unexpected end of input", pos_, "number, x, pi, e, function or (");
        char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto e = parse_expr();
            expect_char(')');
            return e;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c))) return parse_word();
        throw ParseError("unexpected character", pos_, "number, x, pi, e, function or (");
    }

    std::unique_ptr<ExprAst> parse_number() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isdigit(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '.'))
            ++pos_;
        // exponent part
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
                    ++pos_;
            } else {
                pos_ = mark;  // the 'e' was the constant, not an exponent
            }
        }
        double v = 0.0;
        if (!detail::parse_double(text_.substr(start, pos_ - start), v))
            throw ParseError("malformed number", start, "number");
        return std::make_unique<ExprAst>(ExprAst::Constant{v});
    }

    std::unique_ptr<ExprAst> parse_word() {
        std::size_t start = pos_;
        while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
        std::string_view word = text_.substr(start, pos_ - start);
        if (word == "x") return std::make_unique<ExprAst>(ExprAst::Variable{});
        if (word == "pi") return std::make_unique<ExprAst>(ExprAst::Constant{3.141592653589793});
        if (word == "e") return std::make_unique<ExprAst>(ExprAst::Constant{2.718281828459045});
        UnaryOp op;
        if (word == "exp") op = UnaryOp::exp;
        else if (word == "ln") op = UnaryOp::ln;
        else if (word == "sqrt") op = UnaryOp::sqrt;
        else if (word == "sin") op = UnaryOp::sin;
        else if (word == "cos") op = UnaryOp::cos;
        else if (word == "abs") op = UnaryOp::abs;
        else throw ParseError("unknown identifier '" + std::string(word) + "'", start,
                              "x, pi, e, exp, ln, sqrt, sin, cos or abs");
        expect_char('(');
        auto arg = parse_expr();
        expect_char(')');
        return std::make_unique<ExprAst>(ExprAst::Unary{op, std::move(arg)});
    }
};

}  // namespace detail

inline std::unique_ptr<ExprAst> parse_expr(std::string_view text) {
    return detail::ExprParser(text).parse();
}

inline double eval_expr(const ExprAst& ast, double x) {
    double result = std::visit(
        [&](const auto& node) -> double {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExprAst::Constant>) {
                return node.value;
            } else if constexpr (std::is_same_v<T, ExprAst::Variable>) {
                return x;
            } else if constexpr (std::is_same_v<T, ExprAst::Unary>) {
                double v = eval_expr(*node.child, x);
                switch (node.op) {
                    case UnaryOp::neg: return -v;
                    case UnaryOp::exp: return std::exp(v);
                    case UnaryOp::ln:
                        if (v < 0.0) throw EvalError("ln", v);
                        return std::log(v);
                    case UnaryOp::sqrt:
                        if (v < 0.0) throw EvalError("sqrt", v);
                        return std::sqrt(v);
                    case UnaryOp::sin: return std::sin(v);
                    case UnaryOp::cos: return std::cos(v);
                    default: return std::abs(v);
                }
            } else {
                double a = eval_expr(*node.lhs, x);
                double b = eval_expr(*node.rhs, x);
                switch (node.op) {
                    case BinaryOp::add: return a + b;
                    case BinaryOp::sub: return a - b;
                    case BinaryOp::mul: return a * b;
                    case BinaryOp::div: return a / b;
                    default:
                        if (a < 0.0 && b != std::floor(b)) throw EvalError("^", a);
                        return std::pow(a, b);
                }
            }
        },
        ast.node());
    if (std::isinf(result)) throw OverflowError("expression evaluation overflowed");
    return result;
}

namespace detail {

inline int precedence(BinaryOp op) {
    switch (op) {
        case BinaryOp::add:
        case BinaryOp::sub: return 1;
        case BinaryOp::mul:
        case BinaryOp::div: return 2;
        default: return 4;  // pow, above unary minus (3)
    }
}

inline void unparse_rec(const ExprAst& ast, std::string& out, int parent_prec, bool right_side) {
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, ExprAst::Constant>) {
                if (node.value < 0.0) {
                    out += '(';
                    out += format_double(node.value);
                    out += ')';
                } else {
                    out += format_double(node.value);
                }
            } else if constexpr (std::is_same_v<T, ExprAst::Variable>) {
                out += 'x';
            } else if constexpr (std::is_same_v<T, ExprAst::Unary>) {
                if (node.op == UnaryOp::neg) {
                    bool need = parent_prec > 3;
                    if (need) out += '(';
                    out += '-';
                    unparse_rec(*node.child, out, 3, true);
                    if (need) out += ')';
                } else {
                    out += unary_name(node.op);
                    out += '(';
                    unparse_rec(*node.child, out, 0, false);
                    out += ')';
                }
            } else {
                int prec = precedence(node.op);
                bool need = prec < parent_prec || (prec == parent_prec && right_side);
                // pow is right-associative: parenthesize a left-nested pow
                if (node.op == BinaryOp::pow) need = parent_prec > prec;
                if (need) out += '(';
                const char* sym = node.op == BinaryOp::add   ? "+"
                                  : node.op == BinaryOp::sub ? "-"
                                  : node.op == BinaryOp::mul ? "*"
                                  : node.op == BinaryOp::div ? "/"
                                                             : "^";
                unparse_rec(*node.lhs, out, node.op == BinaryOp::pow ? prec + 1 : prec, false);
                out += sym;
                unparse_rec(*node.rhs, out, node.op == BinaryOp::pow ? prec : prec + 1,
                            node.op != BinaryOp::pow);
                if (need) out += ')';
            }
        },
        ast.node());
}

}  // namespace detail

// Canonical text form; unparse(parse(t)) reparses to an identical tree.
inline std::string unparse_expr(const ExprAst& ast) {
    std::string out;
    detail::unparse_rec(ast, out, 0, false);
    return out;
}

inline bool expr_equal(const ExprAst& a, const ExprAst& b) {
    if (a.node().index() != b.node().index()) return false;
    if (const auto* ca = std::get_if<ExprAst::Constant>(&a.node()))
        return ca->value == std::get<ExprAst::Constant>(b.node()).value;
    if (std::holds_alternative<ExprAst::Variable>(a.node())) return true;
    if (const auto* ua = std::get_if<ExprAst::Unary>(&a.node())) {
        const auto& ub = std::get<ExprAst::Unary>(b.node());
        return ua->op == ub.op && expr_equal(*ua->child, *ub.child);
    }
    const auto& ba = std::get<ExprAst::Binary>(a.node());
    const auto& bb = std::get<ExprAst::Binary>(b.node());
    return ba.op == bb.op && expr_equal(*ba.lhs, *bb.lhs) && expr_equal(*ba.rhs, *bb.rhs);
}

}  // namespace meanref
