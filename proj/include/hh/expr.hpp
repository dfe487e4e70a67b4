#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <memory>
#include <numbers>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "hh/dual.hpp"
#include "hh/errors.hpp"

namespace hh {

// ---------------------------------------------------------------------------
// Abstract syntax tree for the expression language
//
//   expr   := term (("+"|"-") term)*
//   term   := factor (("*"|"/") factor)*
//   factor := "-" factor | atom ("^" factor)?
//   atom   := number | "x" | "pi" | "e" | ident "(" expr ")" | "(" expr ")"
//   ident  in {abs, sqrt, exp, log, sin, cos}
//
// "^" is right-associative and binds tighter than unary minus, so "-x^2"
// parses as -(x^2). Whitespace is insignificant. Numbers are decimal with
// optional fraction and exponent.
// ---------------------------------------------------------------------------

enum class UnaryOp { neg, abs, sqrt, exp, log, sin, cos };
enum class BinaryOp { add, sub, mul, div, pow };

struct Expr;
using ExprPtr = std::unique_ptr<Expr>;

struct Constant {
    double value;
};
struct Variable {};
struct Unary {
    UnaryOp op;
    ExprPtr child;
};
struct Binary {
    BinaryOp op;
    ExprPtr left;
    ExprPtr right;
};

struct Expr {
    std::variant<Constant, Variable, Unary, Binary> node;
};

namespace ast {

inline ExprPtr constant(double v) { return std::make_unique<Expr>(Expr{Constant{v}}); }
inline ExprPtr variable() { return std::make_unique<Expr>(Expr{Variable{}}); }
inline ExprPtr unary(UnaryOp op, ExprPtr child) {
    return std::make_unique<Expr>(Expr{Unary{op, std::move(child)}});
}
inline ExprPtr binary(BinaryOp op, ExprPtr left, ExprPtr right) {
    return std::make_unique<Expr>(Expr{Binary{op, std::move(left), std::move(right)}});
}

inline ExprPtr clone(const Expr& e) {
    struct Visitor {
        ExprPtr operator()(const Constant& c) const { return constant(c.value); }
        ExprPtr operator()(const Variable&) const { return variable(); }
        ExprPtr operator()(const Unary& u) const { return unary(u.op, clone(*u.child)); }
        ExprPtr operator()(const Binary& b) const {
            return binary(b.op, clone(*b.left), clone(*b.right));
        }
    };
    return std::visit(Visitor{}, e.node);
}

inline bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    if (const auto* ca = std::get_if<Constant>(&a.node))
        return ca->value == std::get<Constant>(b.node).value;
    if (std::holds_alternative<Variable>(a.node)) return true;
    if (const auto* ua = std::get_if<Unary>(&a.node)) {
        const auto& ub = std::get<Unary>(b.node);
        return ua->op == ub.op && equal(*ua->child, *ub.child);
    }
    const auto& ba = std::get<Binary>(a.node);
    const auto& bb = std::get<Binary>(b.node);
    return ba.op == bb.op && equal(*ba.left, *bb.left) && equal(*ba.right, *bb.right);
}

} // namespace ast

/// Immutable parsed expression of one real variable "x". Copies are deep;
/// evaluation is pure, so concurrent use from many threads is safe.
class Expression {
public:
    explicit Expression(ExprPtr root) : root_(std::move(root)) {}

    Expression(const Expression& other) : root_(ast::clone(*other.root_)) {}
    Expression& operator=(const Expression& other) {
        if (this != &other) root_ = ast::clone(*other.root_);
        return *this;
    }
    Expression(Expression&&) noexcept = default;
    Expression& operator=(Expression&&) noexcept = default;

    const Expr& root() const noexcept { return *root_; }

    friend bool operator==(const Expression& a, const Expression& b) {
        return ast::equal(a.root(), b.root());
    }

private:
    ExprPtr root_;
};

// ---------------------------------------------------------------------------
// Canonical serialization
// ---------------------------------------------------------------------------

namespace detail {

/// Shortest decimal form that parses back to the same double.
inline std::string format_double_shortest(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

inline int precedence_of(const Expr& e) {
    struct Visitor {
        int operator()(const Constant& c) const { return c.value < 0 ? 3 : 5; }
        int operator()(const Variable&) const { return 5; }
        int operator()(const Unary& u) const { return u.op == UnaryOp::neg ? 3 : 5; }
        int operator()(const Binary& b) const {
            switch (b.op) {
                case BinaryOp::add:
                case BinaryOp::sub: return 1;
                case BinaryOp::mul:
                case BinaryOp::div: return 2;
                case BinaryOp::pow: return 4;
            }
            return 5;
        }
    };
    return std::visit(Visitor{}, e.node);
}

inline const char* unary_name(UnaryOp op) {
    switch (op) {
        case UnaryOp::neg: return "-";
        case UnaryOp::abs: return "abs";
        case UnaryOp::sqrt: return "sqrt";
        case UnaryOp::exp: return "exp";
        case UnaryOp::log: return "log";
        case UnaryOp::sin: return "sin";
        case UnaryOp::cos: return "cos";
    }
    return "?";
}

inline void serialize_node(const Expr& e, std::string& out);

inline void serialize_child(const Expr& child, int min_prec, std::string& out) {
    if (precedence_of(child) < min_prec) {
        out += '(';
        serialize_node(child, out);
        out += ')';
    } else {
        serialize_node(child, out);
    }
}

inline void serialize_node(const Expr& e, std::string& out) {
    struct Visitor {
        std::string& out;
        void operator()(const Constant& c) const { out += format_double_shortest(c.value); }
        void operator()(const Variable&) const { out += 'x'; }
        void operator()(const Unary& u) const {
            if (u.op == UnaryOp::neg) {
                out += '-';
                serialize_child(*u.child, 3, out);
            } else {
                out += unary_name(u.op);
                out += '(';
                serialize_node(*u.child, out);
                out += ')';
            }
        }
        void operator()(const Binary& b) const {
            switch (b.op) {
                case BinaryOp::add:
                    serialize_child(*b.left, 1, out);
                    out += " + ";
                    serialize_child(*b.right, 2, out);
                    break;
                case BinaryOp::sub:
                    serialize_child(*b.left, 1, out);
                    out += " - ";
                    serialize_child(*b.right, 2, out);
                    break;
                case BinaryOp::mul:
                    serialize_child(*b.left, 2, out);
                    out += '*';
                    serialize_child(*b.right, 3, out);
                    break;
                case BinaryOp::div:
                    serialize_child(*b.left, 2, out);
                    out += '/';
                    serialize_child(*b.right, 3, out);
                    break;
                case BinaryOp::pow:
                    serialize_child(*b.left, 5, out);
                    out += '^';
                    serialize_child(*b.right, 4, out);
                    break;
            }
        }
    };
    std::visit(Visitor{out}, e.node);
}

} // namespace detail

inline std::string serialize(const Expr& e) {
    std::string out;
    detail::serialize_node(e, out);
    return out;
}

inline std::string serialize(const Expression& e) { return serialize(e.root()); }

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

enum class TokKind { number, ident, plus, minus, star, slash, caret, lparen, rparen, end };

struct Token {
    TokKind kind;
    std::size_t offset;
    double number = 0.0;
    std::string_view text{};
};

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) { advance(); }

    ExprPtr parse() {
        if (cur_.kind == TokKind::end)
            throw ParseError("empty input", 0, {"expression"});
        ExprPtr e = parse_expr();
        if (cur_.kind != TokKind::end)
            fail("unexpected trailing input", {"end of input", "operator"});
        return e;
    }

private:
    static constexpr int kMaxDepth = 256;

    std::string_view src_;
    std::size_t pos_ = 0;
    Token cur_{TokKind::end, 0};
    int depth_ = 0;

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) const {
        std::string msg = "syntax error at offset " + std::to_string(cur_.offset) + ": " + what;
        if (!expected.empty()) {
            msg += " (expected ";
            for (std::size_t i = 0; i < expected.size(); ++i) {
                if (i) msg += expected.size() == 2 ? " or " : ", ";
                msg += '\'' + expected[i] + '\'';
            }
            msg += ')';
        }
        throw ParseError(msg, cur_.offset, std::move(expected));
    }

    struct DepthGuard {
        Parser& p;
        explicit DepthGuard(Parser& parser) : p(parser) {
            if (++p.depth_ > kMaxDepth)
                throw ParseError("expression nesting too deep at offset " +
                                     std::to_string(p.cur_.offset),
                                 p.cur_.offset, {});
        }
        ~DepthGuard() { --p.depth_; }
    };

    static bool is_ident_start(char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_';
    }
    static bool is_ident_char(char c) { return is_ident_start(c) || (c >= '0' && c <= '9'); }
    static bool is_digit(char c) { return c >= '0' && c <= '9'; }

    void advance() {
        while (pos_ < src_.size() &&
               (src_[pos_] == ' ' || src_[pos_] == '\t' || src_[pos_] == '\r' ||
                src_[pos_] == '\n'))
            ++pos_;
        std::size_t start = pos_;
        if (pos_ >= src_.size()) {
            cur_ = {TokKind::end, start};
            return;
        }
        char c = src_[pos_];
        switch (c) {
            case '+': ++pos_; cur_ = {TokKind::plus, start}; return;
            case '-': ++pos_; cur_ = {TokKind::minus, start}; return;
            case '*': ++pos_; cur_ = {TokKind::star, start}; return;
            case '/': ++pos_; cur_ = {TokKind::slash, start}; return;
            case '^': ++pos_; cur_ = {TokKind::caret, start}; return;
            case '(': ++pos_; cur_ = {TokKind::lparen, start}; return;
            case ')': ++pos_; cur_ = {TokKind::rparen, start}; return;
            default: break;
        }
        if (is_digit(c) || (c == '.' && pos_ + 1 < src_.size() && is_digit(src_[pos_ + 1]))) {
            lex_number(start);
            return;
        }
        if (is_ident_start(c)) {
            while (pos_ < src_.size() && is_ident_char(src_[pos_])) ++pos_;
            cur_ = {TokKind::ident, start, 0.0, src_.substr(start, pos_ - start)};
            return;
        }
        cur_.offset = start;
        throw ParseError("unexpected character at offset " + std::to_string(start), start, {});
    }

    void lex_number(std::size_t start) {
        while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        if (pos_ < src_.size() && src_[pos_] == '.') {
            ++pos_;
            while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
        }
        if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
            std::size_t mark = pos_;
            ++pos_;
            if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) ++pos_;
            if (pos_ < src_.size() && is_digit(src_[pos_])) {
                while (pos_ < src_.size() && is_digit(src_[pos_])) ++pos_;
            } else {
                pos_ = mark; // not an exponent; leave "e"/"E" for the next token
            }
        }
        double value = 0.0;
        auto res = std::from_chars(src_.data() + start, src_.data() + pos_, value);
        if (res.ec == std::errc::result_out_of_range)
            throw ParseError("number out of range at offset " + std::to_string(start), start, {});
        if (res.ec != std::errc() || res.ptr != src_.data() + pos_)
            throw ParseError("malformed number at offset " + std::to_string(start), start, {});
        cur_ = {TokKind::number, start, value};
    }

    bool accept(TokKind k) {
        if (cur_.kind != k) return false;
        advance();
        return true;
    }

    void expect(TokKind k, const char* what) {
        if (cur_.kind != k) fail("unexpected token", {what});
        advance();
    }

    ExprPtr parse_expr() {
        DepthGuard guard(*this);
        ExprPtr lhs = parse_term();
        for (;;) {
            if (accept(TokKind::plus))
                lhs = ast::binary(BinaryOp::add, std::move(lhs), parse_term());
            else if (accept(TokKind::minus))
                lhs = ast::binary(BinaryOp::sub, std::move(lhs), parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        for (;;) {
            if (accept(TokKind::star))
                lhs = ast::binary(BinaryOp::mul, std::move(lhs), parse_factor());
            else if (accept(TokKind::slash))
                lhs = ast::binary(BinaryOp::div, std::move(lhs), parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        DepthGuard guard(*this);
        if (accept(TokKind::minus)) return ast::unary(UnaryOp::neg, parse_factor());
        ExprPtr base = parse_atom();
        if (accept(TokKind::caret))
            return ast::binary(BinaryOp::pow, std::move(base), parse_factor());
        return base;
    }

    ExprPtr parse_atom() {
        switch (cur_.kind) {
            case TokKind::number: {
                double v = cur_.number;
                advance();
                return ast::constant(v);
            }
            case TokKind::ident: return parse_ident();
            case TokKind::lparen: {
                advance();
                ExprPtr inner = parse_expr();
                expect(TokKind::rparen, ")");
                return inner;
            }
            default:
                fail("expected an operand", {"number", "identifier", "(", "-"});
        }
    }

    ExprPtr parse_ident() {
        std::string_view name = cur_.text;
        std::size_t name_offset = cur_.offset;
        if (name == "x") {
            advance();
            return ast::variable();
        }
        if (name == "pi") {
            advance();
            return ast::constant(std::numbers::pi);
        }
        if (name == "e") {
            advance();
            return ast::constant(std::numbers::e);
        }
        UnaryOp op;
        if (name == "abs") op = UnaryOp::abs;
        else if (name == "sqrt") op = UnaryOp::sqrt;
        else if (name == "exp") op = UnaryOp::exp;
        else if (name == "log") op = UnaryOp::log;
        else if (name == "sin") op = UnaryOp::sin;
        else if (name == "cos") op = UnaryOp::cos;
        else
            throw ParseError("unknown identifier '" + std::string(name) + "' at offset " +
                                 std::to_string(name_offset),
                             name_offset, {});
        advance();
        expect(TokKind::lparen, "(");
        ExprPtr arg = parse_expr();
        expect(TokKind::rparen, ")");
        return ast::unary(op, std::move(arg));
    }
};

} // namespace detail

/// Parse expression text into a tree, or throw ParseError with the byte
/// offset of the failure and the tokens that would have been accepted.
inline Expression parse(std::string_view source) {
    detail::Parser parser(source);
    return Expression(parser.parse());
}

// ---------------------------------------------------------------------------
// Evaluation (double or Dual through the same visitor)
// ---------------------------------------------------------------------------

namespace detail {

inline double value_of(double x) { return x; }
inline double value_of(const Dual& d) { return d.val; }

template <class T>
constexpr T numeric_one() {
    if constexpr (std::is_same_v<T, Dual>)
        return Dual{1.0, 0.0};
    else
        return 1.0;
}

[[noreturn]] inline void domain_fail(const char* what, const Expr& node) {
    throw DomainError(std::string(what) + " in '" + serialize(node) + "'");
}

/// Exponents within 1e-12 of an integer are treated as that integer and
/// evaluated by repeated multiplication, which keeps negative bases legal.
inline bool near_integer(double e, long long& n) {
    if (!(std::fabs(e) <= 9.0e15)) return false;
    double r = std::nearbyint(e);
    if (std::fabs(e - r) > 1e-12) return false;
    n = static_cast<long long>(r);
    return true;
}

template <class T>
T pow_integer(T base, long long n, const Expr& node) {
    if (n < 0) {
        if (value_of(base) == 0.0) domain_fail("zero raised to a negative power", node);
        return numeric_one<T>() / pow_integer(base, -n, node);
    }
    T acc = numeric_one<T>();
    T b = base;
    unsigned long long m = static_cast<unsigned long long>(n);
    while (m) {
        if (m & 1ull) acc = acc * b;
        b = b * b;
        m >>= 1;
    }
    return acc;
}

template <class T>
T pow_checked(T base, T expo, const Expr& node) {
    double ev = value_of(expo);
    double bv = value_of(base);
    bool expo_fixed = true;
    if constexpr (std::is_same_v<T, Dual>) expo_fixed = (expo.der == 0.0);

    long long n = 0;
    if (expo_fixed && near_integer(ev, n)) return pow_integer(base, n, node);

    if constexpr (std::is_same_v<T, Dual>) {
        if (!expo_fixed) {
            // variable exponent: b^g = exp(g*log(b)) needs b > 0
            if (bv <= 0.0) domain_fail("non-positive base with variable exponent", node);
            double v = std::pow(bv, ev);
            return {v, v * (expo.der * std::log(bv) + ev * base.der / bv)};
        }
        if (bv < 0.0) domain_fail("negative base with non-integer exponent", node);
        if (bv == 0.0 && ev <= 0.0) domain_fail("zero raised to a non-positive power", node);
        double v = std::pow(bv, ev);
        return {v, ev * std::pow(bv, ev - 1.0) * base.der};
    } else {
        if (bv < 0.0) domain_fail("negative base with non-integer exponent", node);
        if (bv == 0.0 && ev <= 0.0) domain_fail("zero raised to a non-positive power", node);
        return std::pow(bv, ev);
    }
}

template <class T>
T eval_node(const Expr& e, const T& x) {
    if (const auto* c = std::get_if<Constant>(&e.node)) {
        if constexpr (std::is_same_v<T, Dual>)
            return Dual::constant(c->value);
        else
            return c->value;
    }
    if (std::holds_alternative<Variable>(e.node)) return x;
    if (const auto* u = std::get_if<Unary>(&e.node)) {
        using std::abs;
        using std::cos;
        using std::exp;
        using std::log;
        using std::sin;
        using std::sqrt;
        T child = eval_node(*u->child, x);
        switch (u->op) {
            case UnaryOp::neg: return -child;
            case UnaryOp::abs: return abs(child);
            case UnaryOp::sqrt:
                if (value_of(child) < 0.0) domain_fail("sqrt of negative argument", e);
                return sqrt(child);
            case UnaryOp::exp: return exp(child);
            case UnaryOp::log:
                if (value_of(child) <= 0.0) domain_fail("log of non-positive argument", e);
                return log(child);
            case UnaryOp::sin: return sin(child);
            case UnaryOp::cos: return cos(child);
        }
    }
    const auto& b = std::get<Binary>(e.node);
    T lhs = eval_node(*b.left, x);
    T rhs = eval_node(*b.right, x);
    switch (b.op) {
        case BinaryOp::add: return lhs + rhs;
        case BinaryOp::sub: return lhs - rhs;
        case BinaryOp::mul: return lhs * rhs;
        case BinaryOp::div:
            if (value_of(rhs) == 0.0) domain_fail("division by zero", e);
            return lhs / rhs;
        case BinaryOp::pow: return pow_checked(lhs, rhs, e);
    }
    domain_fail("unreachable", e);
}

} // namespace detail

template <class T>
T evaluate_as(const Expression& e, const T& x) {
    return detail::eval_node(e.root(), x);
}

/// f(x) with standard floating-point semantics.
inline double evaluate(const Expression& e, double x) { return evaluate_as(e, x); }

/// f and f' at x propagated together; seed.der picks the direction (1 for d/dx).
inline Dual evaluate_dual(const Expression& e, Dual seed) { return evaluate_as(e, seed); }

/// f'(x) by dual-number propagation; equals the analytic derivative wherever
/// one exists, and 0 at abs kinks.
inline double derivative_value(const Expression& e, double x) {
    return evaluate_as(e, Dual::variable(x)).der;
}

} // namespace hh
