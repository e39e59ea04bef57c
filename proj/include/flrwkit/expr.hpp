#pragma once

#include <cmath>
#include <memory>
#include <string>
#include <string_view>

#include "flrwkit/dual.hpp"
#include "flrwkit/errors.hpp"

namespace flrwkit {

enum class NodeKind { constant, variable, negate, add, subtract, multiply, divide, power, call };

enum class Function { exp, ln, sqrt, sinh, cosh, tanh, sin, cos };

std::string_view to_string(Function f);

namespace detail {
struct ExprNode;
}

/// Immutable expression tree in the single variable t.
///
/// Nodes are shared; copying an Expr is cheap and never deep-copies.
class Expr {
 public:
  /// Empty placeholder, used only for absent children of a node.
  Expr() = default;
  static Expr constant(double v);
  static Expr variable();
  static Expr negate(Expr operand);
  static Expr binary(NodeKind kind, Expr lhs, Expr rhs);
  static Expr call(Function f, Expr arg);

  NodeKind kind() const;
  double value() const;  // constant nodes only
  Function function() const;  // call nodes only
  const Expr& lhs() const;  // operand of negate/call, left side of binary
  const Expr& rhs() const;
  bool depends_on_t() const;

  /// Canonical fully parenthesized form; parse(to_string(v), v) rebuilds this tree.
  std::string to_string(std::string_view variable = "t") const;

  friend bool operator==(const Expr& a, const Expr& b);

 private:
  explicit Expr(std::shared_ptr<const detail::ExprNode> n) : node_(std::move(n)) {}
  std::shared_ptr<const detail::ExprNode> node_;
};

/// Recursive-descent parser for
///   expr   := term (("+"|"-") term)*
///   term   := factor (("*"|"/") factor)*
///   factor := unary ("^" factor)?
///   unary  := "-" unary | atom
///   atom   := NUMBER | "t" | IDENT "(" expr ")" | "(" expr ")"
/// The variable is spelled "t" unless another name is given (e.g. "R" for
/// synthetic fields, "x" for profiles).
/// Throws SyntaxError (with byte offset) or Error{unknown_function}.
Expr parse(std::string_view text, std::string_view variable = "t");

namespace detail {

struct ExprNode {
  NodeKind kind;
  double value = 0.0;
  Function fn = Function::exp;
  Expr a;
  Expr b;
  bool has_var = false;
};

[[noreturn]] void throw_domain(const Expr& e, double t, const char* why);

inline bool is_integer(double k) { return std::isfinite(k) && std::floor(k) == k; }

template <class N>
N power(const Expr& e, const N& base, const Expr& exponent, const N& t);

}  // namespace detail

inline NodeKind Expr::kind() const { return node_->kind; }
inline double Expr::value() const { return node_->value; }
inline Function Expr::function() const { return node_->fn; }
inline const Expr& Expr::lhs() const { return node_->a; }
inline const Expr& Expr::rhs() const { return node_->b; }
inline bool Expr::depends_on_t() const { return node_->has_var; }

/// Evaluate at t with any number type built from double and Dual.
/// Seeding t as Dual{t, 1} yields (a, a'); nesting once more yields a''.
template <class N>
N evaluate(const Expr& e, const N& t) {
  using std::cos;
  using std::cosh;
  using std::exp;
  using std::log;
  using std::sin;
  using std::sinh;
  using std::sqrt;
  using std::tanh;
  const double tp = primal(t);
  switch (e.kind()) {
    case NodeKind::constant:
      return N(e.value());
    case NodeKind::variable:
      return t;
    case NodeKind::negate:
      return -evaluate(e.lhs(), t);
    case NodeKind::add:
      return evaluate(e.lhs(), t) + evaluate(e.rhs(), t);
    case NodeKind::subtract:
      return evaluate(e.lhs(), t) - evaluate(e.rhs(), t);
    case NodeKind::multiply:
      return evaluate(e.lhs(), t) * evaluate(e.rhs(), t);
    case NodeKind::divide: {
      const N den = evaluate(e.rhs(), t);
      if (primal(den) == 0.0) detail::throw_domain(e, tp, "division by zero");
      return evaluate(e.lhs(), t) / den;
    }
    case NodeKind::power:
      return detail::power(e, evaluate(e.lhs(), t), e.rhs(), t);
    case NodeKind::call: {
      const N x = evaluate(e.lhs(), t);
      switch (e.function()) {
        case Function::exp:
          return exp(x);
        case Function::ln:
          if (!(primal(x) > 0.0)) detail::throw_domain(e, tp, "ln of non-positive value");
          return log(x);
        case Function::sqrt:
          if (primal(x) < 0.0) detail::throw_domain(e, tp, "sqrt of negative value");
          if (primal(x) == 0.0 && e.lhs().depends_on_t())
            detail::throw_domain(e, tp, "sqrt derivative undefined at 0");
          return sqrt(x);
        case Function::sinh:
          return sinh(x);
        case Function::cosh:
          return cosh(x);
        case Function::tanh:
          return tanh(x);
        case Function::sin:
          return sin(x);
        case Function::cos:
          return cos(x);
      }
    }
  }
  detail::throw_domain(e, tp, "corrupt expression node");
}

template <class N>
N detail::power(const Expr& e, const N& base, const Expr& exponent, const N& tn) {
  using std::exp;
  using std::log;
  using std::pow;
  const double t = primal(tn);
  const double b = primal(base);
  if (!exponent.depends_on_t()) {
    const double k = primal(evaluate(exponent, N(0.0)));
    if (b < 0.0 && !is_integer(k)) throw_domain(e, t, "non-integer power of negative base");
    if (b == 0.0 && k < 0.0) throw_domain(e, t, "negative power of zero");
    return pow(base, k);
  }
  if (!(b > 0.0)) throw_domain(e, t, "variable exponent needs a positive base");
  return exp(evaluate(exponent, tn) * log(base));
}

/// (a(t), a'(t)). Throws Error{domain} on domain violations and
/// Error{non_finite} on overflow or NaN.
Dual<double> eval_dual(const Expr& e, double t);

/// a(t) alone, same error contract as eval_dual.
double eval(const Expr& e, double t);

}  // namespace flrwkit
