#include "flrwkit/expr.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <optional>
#include <sstream>
#include <utility>

#include "flrwkit/format.hpp"

namespace flrwkit {

namespace {

constexpr std::array<std::pair<std::string_view, Function>, 8> kFunctions{{
    {"exp", Function::exp},
    {"ln", Function::ln},
    {"sqrt", Function::sqrt},
    {"sinh", Function::sinh},
    {"cosh", Function::cosh},
    {"tanh", Function::tanh},
    {"sin", Function::sin},
    {"cos", Function::cos},
}};

std::optional<Function> lookup_function(std::string_view name) {
  for (const auto& [n, f] : kFunctions)
    if (n == name) return f;
  return std::nullopt;
}

}  // namespace

std::string_view to_string(Function f) {
  for (const auto& [n, fn] : kFunctions)
    if (fn == f) return n;
  return "?";
}

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::syntax: return "SyntaxError";
    case ErrorCode::unknown_function: return "UnknownFunction";
    case ErrorCode::domain: return "DomainError";
    case ErrorCode::non_finite: return "NonFinite";
    case ErrorCode::anchor_outside_interval: return "AnchorOutsideInterval";
    case ErrorCode::finite_upper_endpoint: return "FiniteUpperEndpoint";
    case ErrorCode::finite_lower_endpoint: return "FiniteLowerEndpoint";
    case ErrorCode::degenerate_point: return "DegeneratePoint";
    case ErrorCode::region_crosses_degenerate_set: return "RegionCrossesDegenerateSet";
    case ErrorCode::characteristic_escaped_region: return "CharacteristicEscapedRegion";
    case ErrorCode::path_crosses_singularity: return "PathCrossesSingularity";
    case ErrorCode::profile_violation: return "ProfileViolation";
    case ErrorCode::theta_hit_pole: return "ThetaHitPole";
    case ErrorCode::theta_hit_equator: return "ThetaHitEquator";
    case ErrorCode::sample_outside_region: return "SampleOutsideRegion";
    case ErrorCode::curve_leaves_interval: return "CurveLeavesInterval";
    case ErrorCode::degenerate_theta_fixed: return "DegenerateThetaFixed";
    case ErrorCode::unknown_entry: return "UnknownEntry";
    case ErrorCode::config: return "ConfigError";
  }
  return "Error";
}

Expr Expr::constant(double v) {
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = NodeKind::constant;
  n->value = v;
  return Expr(std::move(n));
}

Expr Expr::variable() {
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = NodeKind::variable;
  n->has_var = true;
  return Expr(std::move(n));
}

Expr Expr::negate(Expr operand) {
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = NodeKind::negate;
  n->has_var = operand.depends_on_t();
  n->a = std::move(operand);
  return Expr(std::move(n));
}

Expr Expr::binary(NodeKind kind, Expr lhs, Expr rhs) {
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = kind;
  n->has_var = lhs.depends_on_t() || rhs.depends_on_t();
  n->a = std::move(lhs);
  n->b = std::move(rhs);
  return Expr(std::move(n));
}

Expr Expr::call(Function f, Expr arg) {
  auto n = std::make_shared<detail::ExprNode>();
  n->kind = NodeKind::call;
  n->fn = f;
  n->has_var = arg.depends_on_t();
  n->a = std::move(arg);
  return Expr(std::move(n));
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.node_ == b.node_) return true;
  if (!a.node_ || !b.node_) return false;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case NodeKind::constant:
      return a.value() == b.value();
    case NodeKind::variable:
      return true;
    case NodeKind::negate:
      return a.lhs() == b.lhs();
    case NodeKind::call:
      return a.function() == b.function() && a.lhs() == b.lhs();
    default:
      return a.lhs() == b.lhs() && a.rhs() == b.rhs();
  }
}

std::string Expr::to_string(std::string_view var) const {
  switch (kind()) {
    case NodeKind::constant:
      return format_double(value());
    case NodeKind::variable:
      return std::string(var);
    case NodeKind::negate:
      return "(-" + lhs().to_string(var) + ")";
    case NodeKind::call:
      return std::string(flrwkit::to_string(function())) + "(" + lhs().to_string(var) + ")";
    case NodeKind::add:
      return "(" + lhs().to_string(var) + " + " + rhs().to_string(var) + ")";
    case NodeKind::subtract:
      return "(" + lhs().to_string(var) + " - " + rhs().to_string(var) + ")";
    case NodeKind::multiply:
      return "(" + lhs().to_string(var) + " * " + rhs().to_string(var) + ")";
    case NodeKind::divide:
      return "(" + lhs().to_string(var) + " / " + rhs().to_string(var) + ")";
    case NodeKind::power:
      return "(" + lhs().to_string(var) + " ^ " + rhs().to_string(var) + ")";
  }
  return "?";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, std::string_view variable) : s_(text), var_(variable) {}

  Expr run() {
    Expr e = expr();
    skip_ws();
    if (pos_ != s_.size())
      fail({"+", "-", "*", "/", "^", "end of input"}, "unexpected trailing input");
    return e;
  }

 private:
  std::string_view s_;
  std::string_view var_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }

  [[noreturn]] void fail(std::vector<std::string> expected, const std::string& why) {
    std::ostringstream msg;
    msg << "syntax error at offset " << pos_ << ": " << why << "; expected one of {";
    for (std::size_t i = 0; i < expected.size(); ++i) msg << (i ? ", " : "") << expected[i];
    msg << "}";
    throw SyntaxError(pos_, std::move(expected), msg.str());
  }

  Expr expr() {
    Expr lhs = term();
    for (;;) {
      const char c = peek();
      if (c != '+' && c != '-') return lhs;
      ++pos_;
      lhs = Expr::binary(c == '+' ? NodeKind::add : NodeKind::subtract, lhs, term());
    }
  }

  Expr term() {
    Expr lhs = factor();
    for (;;) {
      const char c = peek();
      if (c != '*' && c != '/') return lhs;
      ++pos_;
      lhs = Expr::binary(c == '*' ? NodeKind::multiply : NodeKind::divide, lhs, factor());
    }
  }

  Expr factor() {
    Expr base = unary();
    if (peek() == '^') {
      ++pos_;
      return Expr::binary(NodeKind::power, base, factor());
    }
    return base;
  }

  Expr unary() {
    if (peek() == '-') {
      ++pos_;
      return Expr::negate(unary());
    }
    return atom();
  }

  Expr atom() {
    const char c = peek();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return identifier();
    if (c == '(') {
      ++pos_;
      Expr inner = expr();
      if (peek() != ')') fail({")", "+", "-", "*", "/", "^"}, "unbalanced parenthesis");
      ++pos_;
      return inner;
    }
    fail({"NUMBER", "t", "IDENT", "(", "-"}, pos_ < s_.size() ? "unexpected character" : "unexpected end of input");
  }

  Expr number() {
    const std::size_t start = pos_;
    auto digits = [&] {
      std::size_t n = 0;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_, ++n;
      return n;
    };
    std::size_t nd = digits();
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      nd += digits();
    }
    if (nd == 0) fail({"NUMBER"}, "malformed number");
    if (pos_ < s_.size() && (s_[pos_] == 'e' || s_[pos_] == 'E')) {
      ++pos_;
      if (pos_ < s_.size() && (s_[pos_] == '+' || s_[pos_] == '-')) ++pos_;
      if (digits() == 0) fail({"exponent digits"}, "malformed exponent");
    }
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s_.data() + start, s_.data() + pos_, v);
    if (ec != std::errc{} || ptr != s_.data() + pos_) {
      pos_ = start;
      fail({"NUMBER"}, "number out of range");
    }
    return Expr::constant(v);
  }

  Expr identifier() {
    const std::size_t start = pos_;
    while (pos_ < s_.size() &&
           (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_'))
      ++pos_;
    const std::string_view name = s_.substr(start, pos_ - start);
    if (name == var_) return Expr::variable();
    const auto f = lookup_function(name);
    if (!f) {
      throw Error(ErrorCode::unknown_function,
                  "unknown function '" + std::string(name) + "' at offset " +
                      std::to_string(start));
    }
    if (peek() != '(') fail({"("}, "function name must be followed by '('");
    ++pos_;
    Expr arg = expr();
    if (peek() != ')') fail({")", "+", "-", "*", "/", "^"}, "unbalanced parenthesis");
    ++pos_;
    return Expr::call(*f, std::move(arg));
  }
};

}  // namespace

Expr parse(std::string_view text, std::string_view variable) { return Parser(text, variable).run(); }

void detail::throw_domain(const Expr& e, double t, const char* why) {
  throw Error(ErrorCode::domain, std::string(why) + " in " + e.to_string() + " at t=" + format_double(t));
}

Dual<double> eval_dual(const Expr& e, double t) {
  const Dual<double> r = evaluate(e, Dual<double>{t, 1.0});
  if (!all_finite(r)) {
    throw Error(ErrorCode::non_finite,
                "non-finite result (" + format_double(r.value) + ", " + format_double(r.deriv) +
                    ") for " + e.to_string() + " at t=" + format_double(t));
  }
  return r;
}

double eval(const Expr& e, double t) {
  const double r = evaluate(e, t);
  if (!std::isfinite(r))
    throw Error(ErrorCode::non_finite, "non-finite value for " + e.to_string() + " at t=" + format_double(t));
  return r;
}

}  // namespace flrwkit
