#include "curvelab/expr.hpp"

#include <array>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <utility>
#include <vector>

#include "curvelab/errors.hpp"

namespace curvelab::expr {

// ---------------------------------------------------------------------------
// Jet arithmetic. Jets carry derivatives (not Taylor coefficients), so the
// product rule is Leibniz and unary functions compose by Faa di Bruno up to
// order 3.

Jet3 operator+(const Jet3& a, const Jet3& b) {
    return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

Jet3 operator-(const Jet3& a, const Jet3& b) {
    return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

Jet3 operator-(const Jet3& a) { return {-a.v, -a.d1, -a.d2, -a.d3}; }

Jet3 operator*(const Jet3& a, const Jet3& b) {
    return {a.v * b.v,
            a.d1 * b.v + a.v * b.d1,
            a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2,
            a.d3 * b.v + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.v * b.d3};
}

Jet3 operator/(const Jet3& a, const Jet3& b) {
    // Solve a = q * b order by order.
    Jet3 q;
    q.v = a.v / b.v;
    q.d1 = (a.d1 - q.v * b.d1) / b.v;
    q.d2 = (a.d2 - 2.0 * q.d1 * b.d1 - q.v * b.d2) / b.v;
    q.d3 = (a.d3 - 3.0 * q.d2 * b.d1 - 3.0 * q.d1 * b.d2 - q.v * b.d3) / b.v;
    return q;
}

namespace {

/// Compose h(u) from the inner jet u and the derivatives h', h'', h''' of h
/// at u.v.
Jet3 compose(double h0, double h1, double h2, double h3, const Jet3& u) {
    return {h0,
            h1 * u.d1,
            h2 * u.d1 * u.d1 + h1 * u.d2,
            h3 * u.d1 * u.d1 * u.d1 + 3.0 * h2 * u.d1 * u.d2 + h1 * u.d3};
}

constexpr Jet3 constant_jet(double v) { return {v, 0.0, 0.0, 0.0}; }

bool jet_is_constant(const Jet3& j) { return j.d1 == 0.0 && j.d2 == 0.0 && j.d3 == 0.0; }

}  // namespace

// ---------------------------------------------------------------------------
// AST

enum class Func { Sin, Cos, Tan, Exp, Log, Sqrt, Atan, Asin, Acos, Sinh, Cosh };

struct Node {
    enum class Kind { Number, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

    Kind kind;
    double number = 0.0;
    Func func = Func::Sin;
    std::shared_ptr<const Node> lhs;
    std::shared_ptr<const Node> rhs;
    std::size_t offset = 0;  // byte position in the source text, for messages
};

Expression::Expression(std::shared_ptr<const Node> root, std::string var)
    : root_(std::move(root)), var_(std::move(var)) {}

namespace {

const std::array<std::pair<const char*, Func>, 11> kFuncs = {{
    {"sin", Func::Sin}, {"cos", Func::Cos}, {"tan", Func::Tan}, {"exp", Func::Exp},
    {"log", Func::Log}, {"sqrt", Func::Sqrt}, {"atan", Func::Atan}, {"asin", Func::Asin},
    {"acos", Func::Acos}, {"sinh", Func::Sinh}, {"cosh", Func::Cosh},
}};

const char* func_name(Func f) {
    for (const auto& [name, fn] : kFuncs) {
        if (fn == f) return name;
    }
    return "?";
}

// ---- recursive-descent parser ----

class Parser {
public:
    Parser(std::string_view text, std::string_view fixed_var)
        : text_(text), var_(fixed_var), var_fixed_(!fixed_var.empty()) {}

    Expression run() {
        if (text_.find_first_not_of(" \t\r\n") == std::string_view::npos) {
            throw SyntaxError("empty expression", 0);
        }
        auto node = parse_sum();
        skip_ws();
        if (pos_ != text_.size()) {
            throw SyntaxError("unexpected trailing input", pos_);
        }
        return Expression(std::move(node), std::string(var_));
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;
    std::string var_;
    bool var_fixed_;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c, const char* what) {
        if (!accept(c)) {
            throw SyntaxError(std::string("expected ") + what, pos_);
        }
    }

    char peek() {
        skip_ws();
        return pos_ < text_.size() ? text_[pos_] : '\0';
    }

    static std::shared_ptr<Node> make(Node::Kind kind, std::size_t off,
                                      std::shared_ptr<const Node> lhs = nullptr,
                                      std::shared_ptr<const Node> rhs = nullptr) {
        auto n = std::make_shared<Node>();
        n->kind = kind;
        n->offset = off;
        n->lhs = std::move(lhs);
        n->rhs = std::move(rhs);
        return n;
    }

    std::shared_ptr<const Node> parse_sum() {
        auto lhs = parse_product();
        for (;;) {
            const std::size_t off = pos_;
            if (accept('+')) {
                lhs = make(Node::Kind::Add, off, std::move(lhs), parse_product());
            } else if (accept('-')) {
                lhs = make(Node::Kind::Sub, off, std::move(lhs), parse_product());
            } else {
                return lhs;
            }
        }
    }

    std::shared_ptr<const Node> parse_product() {
        auto lhs = parse_unary();
        for (;;) {
            const std::size_t off = pos_;
            if (accept('*')) {
                lhs = make(Node::Kind::Mul, off, std::move(lhs), parse_unary());
            } else if (accept('/')) {
                lhs = make(Node::Kind::Div, off, std::move(lhs), parse_unary());
            } else {
                return lhs;
            }
        }
    }

    // Unary minus binds looser than ^: -x^2 parses as -(x^2).
    std::shared_ptr<const Node> parse_unary() {
        const std::size_t off = pos_;
        if (accept('-')) {
            return make(Node::Kind::Neg, off, parse_unary());
        }
        return parse_power();
    }

    std::shared_ptr<const Node> parse_power() {
        auto base = parse_primary();
        const std::size_t off = pos_;
        if (accept('^')) {
            // Right-associative; a signed exponent is allowed: 2^-3.
            return make(Node::Kind::Pow, off, std::move(base), parse_unary());
        }
        return base;
    }

    std::shared_ptr<const Node> parse_primary() {
        skip_ws();
        if (pos_ >= text_.size()) {
            throw SyntaxError("unexpected end of expression", pos_);
        }
        const char c = text_[pos_];
        if (c == '(') {
            ++pos_;
            auto inner = parse_sum();
            expect(')', "')'");
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
            return parse_number();
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            return parse_identifier();
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos_);
    }

    std::shared_ptr<const Node> parse_number() {
        const std::size_t start = pos_;
        const std::string tail(text_.substr(pos_));
        std::size_t used = 0;
        double value = 0.0;
        try {
            value = std::stod(tail, &used);
        } catch (const std::exception&) {
            throw SyntaxError("malformed number", start);
        }
        // std::stod accepts hex and inf/nan spellings we never produce; the
        // grammar only reaches here on a digit or '.', so plain decimals only.
        pos_ += used;
        if (pos_ < text_.size() && (std::isalpha(static_cast<unsigned char>(text_[pos_])) ||
                                    text_[pos_] == '_' || text_[pos_] == '(')) {
            throw SyntaxError("implicit multiplication is not allowed", pos_);
        }
        auto n = make(Node::Kind::Number, start);
        n->number = value;
        return n;
    }

    std::shared_ptr<const Node> parse_identifier() {
        const std::size_t start = pos_;
        while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) ||
                                       text_[pos_] == '_')) {
            ++pos_;
        }
        const std::string name(text_.substr(start, pos_ - start));

        for (const auto& [fname, fn] : kFuncs) {
            if (name == fname) {
                if (!accept('(')) {
                    throw ArityError("function '" + name + "' requires one parenthesized argument");
                }
                auto arg = parse_sum();
                if (accept(',')) {
                    throw ArityError("function '" + name + "' takes exactly one argument");
                }
                expect(')', "')'");
                auto n = make(Node::Kind::Call, start, std::move(arg));
                n->func = fn;
                return n;
            }
        }
        if (name == "pi") {
            auto n = make(Node::Kind::Number, start);
            n->number = std::numbers::pi;
            return n;
        }
        if (name == "e") {
            auto n = make(Node::Kind::Number, start);
            n->number = std::numbers::e;
            return n;
        }
        if (peek() == '(') {
            throw UnknownIdentifierError("unknown function '" + name + "'");
        }
        if (var_.empty()) {
            var_ = name;
        } else if (name != var_) {
            throw UnknownIdentifierError(var_fixed_
                                             ? "unknown identifier '" + name + "' (variable is '" + var_ + "')"
                                             : "second free variable '" + name + "' (already using '" + var_ + "')");
        }
        return make(Node::Kind::Var, start);
    }
};

// ---- canonical printer ----

std::string number_to_string(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void print_node(const Node* n, const std::string& var, std::string& out) {
    switch (n->kind) {
        case Node::Kind::Number:
            out += number_to_string(n->number);
            return;
        case Node::Kind::Var:
            out += var.empty() ? "t" : var;
            return;
        case Node::Kind::Neg:
            out += "(-";
            print_node(n->lhs.get(), var, out);
            out += ')';
            return;
        case Node::Kind::Add:
        case Node::Kind::Sub:
        case Node::Kind::Mul:
        case Node::Kind::Div:
        case Node::Kind::Pow: {
            const char op = n->kind == Node::Kind::Add   ? '+'
                            : n->kind == Node::Kind::Sub ? '-'
                            : n->kind == Node::Kind::Mul ? '*'
                            : n->kind == Node::Kind::Div ? '/'
                                                         : '^';
            out += '(';
            print_node(n->lhs.get(), var, out);
            out += ' ';
            out += op;
            out += ' ';
            print_node(n->rhs.get(), var, out);
            out += ')';
            return;
        }
        case Node::Kind::Call:
            out += func_name(n->func);
            out += '(';
            print_node(n->lhs.get(), var, out);
            out += ')';
            return;
    }
}

// ---- jet evaluation ----

[[noreturn]] void domain_fail(const Node* n, const std::string& what) {
    throw DomainError(what + " (node at byte " + std::to_string(n->offset) + ")");
}

Jet3 pow_integer(const Node* n, Jet3 base, long long k) {
    if (k < 0) {
        if (base.v == 0.0) domain_fail(n, "zero raised to a negative power");
        return constant_jet(1.0) / pow_integer(n, base, -k);
    }
    Jet3 result = constant_jet(1.0);
    while (k > 0) {
        if (k & 1) result = result * base;
        base = base * base;
        k >>= 1;
    }
    return result;
}

Jet3 eval_call(const Node* n, const Jet3& u) {
    const double x = u.v;
    switch (n->func) {
        case Func::Sin: {
            const double s = std::sin(x), c = std::cos(x);
            return compose(s, c, -s, -c, u);
        }
        case Func::Cos: {
            const double s = std::sin(x), c = std::cos(x);
            return compose(c, -s, -c, s, u);
        }
        case Func::Tan: {
            const double t = std::tan(x);
            const double sec2 = 1.0 + t * t;
            return compose(t, sec2, 2.0 * t * sec2, 2.0 * sec2 * (1.0 + 3.0 * t * t), u);
        }
        case Func::Exp: {
            const double ex = std::exp(x);
            return compose(ex, ex, ex, ex, u);
        }
        case Func::Log: {
            if (x <= 0.0) domain_fail(n, "log of a non-positive value");
            const double ix = 1.0 / x;
            return compose(std::log(x), ix, -ix * ix, 2.0 * ix * ix * ix, u);
        }
        case Func::Sqrt: {
            if (x < 0.0) domain_fail(n, "sqrt of a negative value");
            if (x == 0.0) {
                if (jet_is_constant(u)) return constant_jet(0.0);
                domain_fail(n, "sqrt has a singular derivative at zero");
            }
            const double r = std::sqrt(x);
            return compose(r, 0.5 / r, -0.25 / (r * x), 0.375 / (r * x * x), u);
        }
        case Func::Atan: {
            const double q = 1.0 / (1.0 + x * x);
            return compose(std::atan(x), q, -2.0 * x * q * q, (6.0 * x * x - 2.0) * q * q * q, u);
        }
        case Func::Asin:
        case Func::Acos: {
            if (std::abs(x) >= 1.0) {
                if (std::abs(x) > 1.0 || !jet_is_constant(u)) {
                    domain_fail(n, "asin/acos argument outside (-1, 1)");
                }
                return constant_jet(n->func == Func::Asin ? std::asin(x) : std::acos(x));
            }
            const double w = 1.0 - x * x;
            const double rw = std::sqrt(w);
            const double h1 = 1.0 / rw;
            const double h2 = x / (w * rw);
            const double h3 = (1.0 + 2.0 * x * x) / (w * w * rw);
            if (n->func == Func::Asin) return compose(std::asin(x), h1, h2, h3, u);
            return compose(std::acos(x), -h1, -h2, -h3, u);
        }
        case Func::Sinh: {
            const double sh = std::sinh(x), ch = std::cosh(x);
            return compose(sh, ch, sh, ch, u);
        }
        case Func::Cosh: {
            const double sh = std::sinh(x), ch = std::cosh(x);
            return compose(ch, sh, ch, sh, u);
        }
    }
    domain_fail(n, "unhandled function");
}

Jet3 eval_node(const Node* n, double t0) {
    switch (n->kind) {
        case Node::Kind::Number:
            return constant_jet(n->number);
        case Node::Kind::Var:
            return {t0, 1.0, 0.0, 0.0};
        case Node::Kind::Neg:
            return -eval_node(n->lhs.get(), t0);
        case Node::Kind::Add:
            return eval_node(n->lhs.get(), t0) + eval_node(n->rhs.get(), t0);
        case Node::Kind::Sub:
            return eval_node(n->lhs.get(), t0) - eval_node(n->rhs.get(), t0);
        case Node::Kind::Mul:
            return eval_node(n->lhs.get(), t0) * eval_node(n->rhs.get(), t0);
        case Node::Kind::Div: {
            const Jet3 denom = eval_node(n->rhs.get(), t0);
            if (denom.v == 0.0) domain_fail(n, "division by zero");
            return eval_node(n->lhs.get(), t0) / denom;
        }
        case Node::Kind::Pow: {
            const Jet3 base = eval_node(n->lhs.get(), t0);
            const Jet3 expo = eval_node(n->rhs.get(), t0);
            if (jet_is_constant(expo) && std::abs(expo.v) < 9.0e15 &&
                expo.v == std::nearbyint(expo.v)) {
                // Integer exponents go through repeated multiplication, which
                // keeps negative bases legal and the jet exact.
                return pow_integer(n, base, static_cast<long long>(expo.v));
            }
            if (base.v <= 0.0) {
                domain_fail(n, "non-integer power of a non-positive base");
            }
            // x^y = exp(y log x)
            const double ix = 1.0 / base.v;
            const Jet3 lg = compose(std::log(base.v), ix, -ix * ix, 2.0 * ix * ix * ix, base);
            const Jet3 prod = expo * lg;
            const double ep = std::exp(prod.v);
            return compose(ep, ep, ep, ep, prod);
        }
        case Node::Kind::Call:
            return eval_call(n, eval_node(n->lhs.get(), t0));
    }
    throw DomainError("malformed expression tree");
}

}  // namespace

Expression parse(std::string_view text) { return Parser(text, {}).run(); }

Expression parse(std::string_view text, std::string_view variable) {
    return Parser(text, variable).run();
}

std::string to_string(const Expression& e) {
    if (e.root() == nullptr) return {};
    std::string out;
    print_node(e.root(), e.variable(), out);
    return out;
}

Jet3 eval_jet(const Expression& e, double t0) {
    if (e.root() == nullptr) {
        throw DomainError("evaluating an empty expression");
    }
    const Jet3 j = eval_node(e.root(), t0);
    if (!std::isfinite(j.v) || !std::isfinite(j.d1) || !std::isfinite(j.d2) ||
        !std::isfinite(j.d3)) {
        throw DomainError("expression evaluated to a non-finite jet at t = " + std::to_string(t0));
    }
    return j;
}

double eval(const Expression& e, double t0) { return eval_jet(e, t0).v; }

}  // namespace curvelab::expr
