#ifndef CURVELAB_EXPR_HPP
#define CURVELAB_EXPR_HPP

#include <memory>
#include <string>
#include <string_view>

namespace curvelab::expr {

/// Value of an expression at a point together with its first three
/// derivatives with respect to the free variable, propagated by truncated
/// Taylor (jet) arithmetic. Order 3 is exactly what the torsion formula
/// consumes.
struct Jet3 {
    double v = 0.0;
    double d1 = 0.0;
    double d2 = 0.0;
    double d3 = 0.0;
};

Jet3 operator+(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a, const Jet3& b);
Jet3 operator-(const Jet3& a);
Jet3 operator*(const Jet3& a, const Jet3& b);
Jet3 operator/(const Jet3& a, const Jet3& b);

struct Node;

/// Immutable parsed expression over one free variable. Copies share the AST.
class Expression {
public:
    Expression() = default;
    Expression(std::shared_ptr<const Node> root, std::string var);

    const Node* root() const { return root_.get(); }
    /// Name of the free variable; empty for constant expressions.
    const std::string& variable() const { return var_; }

private:
    std::shared_ptr<const Node> root_;
    std::string var_;
};

/// Parse with conventional precedence: binary + - * / ^, unary minus, calls
/// to sin cos tan exp log sqrt atan asin acos sinh cosh, constants pi and e.
/// ^ is right-associative and binds tighter than unary minus, so -x^2 is
/// -(x^2). The first unknown identifier becomes the free variable; any later
/// distinct identifier is an UnknownIdentifierError.
Expression parse(std::string_view text);

/// Same, but the free variable name is fixed up front; other identifiers are
/// rejected.
Expression parse(std::string_view text, std::string_view variable);

/// Canonical fully parenthesized rendering; parse(to_string(e)) rebuilds the
/// identical AST.
std::string to_string(const Expression& e);

/// Evaluate e and its first three derivatives at t0.
Jet3 eval_jet(const Expression& e, double t0);

/// Value-only convenience wrapper.
double eval(const Expression& e, double t0);

}  // namespace curvelab::expr

#endif
