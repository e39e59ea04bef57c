#include <gtest/gtest.h>

#include <cmath>
#include <string>

#include "flrwkit/expr.hpp"
#include "flrwkit/format.hpp"
#include "test_support.hpp"

using namespace flrwkit;

namespace {

Expr C(double v) { return Expr::constant(v); }
Expr T() { return Expr::variable(); }

}  // namespace

TEST(ExprParse, PowerWithFractionalExponent) {
  const Expr want = Expr::binary(NodeKind::power, T(), Expr::binary(NodeKind::divide, C(1), C(2)));
  EXPECT_EQ(parse("t^(1/2)"), want);
}

TEST(ExprParse, UnbalancedParenthesisReportsOffset) {
  try {
    parse("exp(t");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 5u);
    EXPECT_FALSE(e.expected().empty());
  }
}

TEST(ExprParse, ProductBindsTighterThanSum) {
  const Expr want = Expr::binary(NodeKind::add, T(), Expr::binary(NodeKind::multiply, T(), T()));
  EXPECT_EQ(parse("t + t*t"), want);
}

TEST(ExprParse, PowerIsRightAssociative) {
  const Expr want = Expr::binary(NodeKind::power, C(2), Expr::binary(NodeKind::power, C(3), C(2)));
  EXPECT_EQ(parse("2^3^2"), want);
  EXPECT_DOUBLE_EQ(eval(parse("2^3^2"), 0.0), 512.0);
}

TEST(ExprParse, UnaryMinusBindsTighterThanPowerBase) {
  // "-t^2" is (-t)^2 under this grammar.
  EXPECT_DOUBLE_EQ(eval(parse("-t^2"), 3.0), 9.0);
  EXPECT_DOUBLE_EQ(eval(parse("-(t^2)"), 3.0), -9.0);
}

TEST(ExprParse, WhitespaceInsensitive) {
  EXPECT_EQ(parse(" t  +\tt * t "), parse("t+t*t"));
}

TEST(ExprParse, ScientificLiterals) {
  EXPECT_DOUBLE_EQ(eval(parse("1.5e-3 * t"), 2.0), 3e-3);
  EXPECT_DOUBLE_EQ(eval(parse("2E2"), 0.0), 200.0);
}

TEST(ExprParse, UnknownFunction) {
  try {
    parse("foo(t)");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::unknown_function);
  }
}

TEST(ExprParse, MalformedInputsThrowSyntaxError) {
  for (const char* bad : {"", "t^^2", "t +", "(t", "t)", "3 4", "exp()", "1e", "t**2"}) {
    EXPECT_THROW(parse(bad), SyntaxError) << bad;
  }
}

TEST(ExprParse, InfinityIsNotALiteral) {
  EXPECT_THROW(parse("inf"), Error);
  EXPECT_THROW(parse("1/inf"), Error);
}

TEST(ExprParse, DoubleCaretReportsOffset) {
  try {
    parse("t^^2");
    FAIL();
  } catch (const SyntaxError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(ExprParse, AlternativeVariableName) {
  EXPECT_DOUBLE_EQ(eval(parse("1 - R^2", "R"), 0.5), 0.75);
  EXPECT_THROW(parse("t", "R"), Error);
}

TEST(ExprEval, PowerRule) {
  const Dual<double> d = eval_dual(parse("t^2"), 3.0);
  EXPECT_DOUBLE_EQ(d.value, 9.0);
  EXPECT_DOUBLE_EQ(d.deriv, 6.0);
}

TEST(ExprEval, SinhAtZero) {
  const Dual<double> d = eval_dual(parse("sinh(t)"), 0.0);
  EXPECT_DOUBLE_EQ(d.value, 0.0);
  EXPECT_DOUBLE_EQ(d.deriv, 1.0);
}

TEST(ExprEval, SumAndProductRule) {
  const Dual<double> d = eval_dual(parse("t + t*t"), 1.0);
  EXPECT_DOUBLE_EQ(d.value, 2.0);
  EXPECT_DOUBLE_EQ(d.deriv, 3.0);
}

TEST(ExprEval, EveryFunctionMatchesItsDerivative) {
  const double t = 0.7;
  struct Case {
    const char* text;
    double value, deriv;
  };
  const Case cases[] = {
      {"exp(t)", std::exp(t), std::exp(t)},
      {"ln(t)", std::log(t), 1 / t},
      {"sqrt(t)", std::sqrt(t), 0.5 / std::sqrt(t)},
      {"sinh(t)", std::sinh(t), std::cosh(t)},
      {"cosh(t)", std::cosh(t), std::sinh(t)},
      {"tanh(t)", std::tanh(t), 1 - std::tanh(t) * std::tanh(t)},
      {"sin(t)", std::sin(t), std::cos(t)},
      {"cos(t)", std::cos(t), -std::sin(t)},
      {"2^t", std::pow(2.0, t), std::log(2.0) * std::pow(2.0, t)},
      {"t^t", std::pow(t, t), std::pow(t, t) * (std::log(t) + 1)},
  };
  for (const auto& c : cases) {
    const Dual<double> d = eval_dual(parse(c.text), t);
    EXPECT_NEAR(d.value, c.value, 1e-15 * (1 + std::abs(c.value))) << c.text;
    EXPECT_NEAR(d.deriv, c.deriv, 1e-14 * (1 + std::abs(c.deriv))) << c.text;
  }
}

TEST(ExprEval, DomainErrors) {
  auto code = [](const char* text, double t) {
    try {
      eval_dual(parse(text), t);
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::config;  // sentinel: nothing thrown
  };
  EXPECT_EQ(code("ln(t)", 0.0), ErrorCode::domain);
  EXPECT_EQ(code("ln(t)", -1.0), ErrorCode::domain);
  EXPECT_EQ(code("sqrt(t)", -1.0), ErrorCode::domain);
  EXPECT_EQ(code("1/t", 0.0), ErrorCode::domain);
  EXPECT_EQ(code("t^(1/2)", -1.0), ErrorCode::domain);
  EXPECT_EQ(code("t^-1", 0.0), ErrorCode::domain);
  EXPECT_EQ(code("exp(t)", 1000.0), ErrorCode::non_finite);
  // Integer powers of negative bases are fine.
  EXPECT_DOUBLE_EQ(eval(parse("t^3"), -2.0), -8.0);
}

TEST(ExprEval, NestedDualsGiveSecondDerivative) {
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  const Expr e = parse("t^3");
  const D2 r = evaluate(e, D2{D1{2.0, 1.0}, D1{1.0, 0.0}});
  EXPECT_DOUBLE_EQ(r.value.value, 8.0);
  EXPECT_DOUBLE_EQ(r.deriv.value, 12.0);
  EXPECT_DOUBLE_EQ(r.deriv.deriv, 12.0);
}

TEST(ExprPrint, CanonicalParenthesizedForm) {
  EXPECT_EQ(parse("t + t*t").to_string(), "(t + (t * t))");
  EXPECT_EQ(parse("-exp(t)^2").to_string(), "((-exp(t)) ^ 2)");
  EXPECT_EQ(parse("1 - R^2", "R").to_string("R"), "(1 - (R ^ 2))");
}

// ---------------------------------------------------------------------------
// Property tests over a bounded random expression generator.

namespace {

// Builds random expression text in t. Arguments of ln, sqrt and divisors are
// forced positive so that every draw is defined on t in [0.2, 3].
class ExprGenerator {
 public:
  explicit ExprGenerator(std::uint64_t seed) : rng_(seed) {}

  std::string next(int depth) {
    if (depth == 0 || rng_.integer(0, 4) == 0) return leaf();
    switch (rng_.integer(0, 9)) {
      case 0: return "(" + next(depth - 1) + " + " + next(depth - 1) + ")";
      case 1: return "(" + next(depth - 1) + " - " + next(depth - 1) + ")";
      case 2: return "(" + next(depth - 1) + " * " + next(depth - 1) + ")";
      case 3: return "(" + next(depth - 1) + " / " + positive(depth - 1) + ")";
      case 4: return "((" + next(depth - 1) + ")^" + std::to_string(rng_.integer(2, 3)) + ")";
      case 5: return "(" + positive(depth - 1) + "^" + number(-1.5, 1.5) + ")";
      case 6: return "ln" + positive(depth - 1);
      case 7: return "sqrt" + positive(depth - 1);
      case 8: return "(-" + next(depth - 1) + ")";
      default: {
        static const char* fns[] = {"exp", "sinh", "cosh", "tanh", "sin", "cos"};
        return std::string(fns[rng_.integer(0, 5)]) + "(" + next(depth - 1) + ")";
      }
    }
  }

 private:
  std::string leaf() { return rng_.integer(0, 2) == 0 ? number(-2, 2) : "t"; }
  std::string number(double lo, double hi) {
    const double v = rng_.uniform(lo, hi);
    const std::string s = format_double(std::round(v * 1000) / 1000);
    return v < 0 ? "(" + s + ")" : s;
  }
  // (c + x^2) with c in [0.5, 2] is strictly positive.
  std::string positive(int depth) { return "(" + number(0.5, 2) + " + (" + next(depth) + ")^2)"; }

  testsupport::Rng rng_;
};

}  // namespace

TEST(ExprProperty, DualDerivativeMatchesFiniteDifferenceAt1000RandomPoints) {
  ExprGenerator gen(20240611);
  testsupport::Rng rng(7);
  int accepted = 0, ill_conditioned = 0;
  while (accepted < 1000) {
    const Expr e = parse(gen.next(4));
    const double t = rng.uniform(0.2, 3.0);
    const Dual<double> d = eval_dual(e, t);
    ASSERT_TRUE(std::isfinite(d.value) && std::isfinite(d.deriv));
    const double h = 1e-6 * std::max(1.0, std::abs(t));
    auto f = [&](double x) { return eval(e, x); };
    const double fd = testsupport::central_diff(f, t, h);
    // Bounded generator: draws on which the FD oracle is itself unreliable
    // (large magnitude, or FD at h and 2h disagree) are redrawn. The dual
    // derivative plays no part in this decision.
    const double fd2 = testsupport::central_diff(f, t, 2 * h);
    if (std::abs(d.value) > 1e3 || std::abs(fd - fd2) > 1e-7 * (1 + std::abs(fd))) {
      ++ill_conditioned;
      continue;
    }
    ASSERT_LE(std::abs(d.deriv - fd), 1e-6 * (1 + std::abs(d.deriv)))
        << e.to_string() << " at t=" << format_double(t);
    ++accepted;
  }
  EXPECT_LT(ill_conditioned, accepted);
}

TEST(ExprProperty, PrintParseRoundTripIsIdempotent) {
  ExprGenerator gen(99);
  for (int k = 0; k < 500; ++k) {
    const Expr e = parse(gen.next(5));
    const std::string printed = e.to_string();
    const Expr again = parse(printed);
    ASSERT_EQ(again, e) << printed;
    ASSERT_EQ(again.to_string(), printed);
  }
}

TEST(ExprProperty, NeverReturnsNaNSilently) {
  ExprGenerator gen(5);
  testsupport::Rng rng(11);
  for (int k = 0; k < 500; ++k) {
    const Expr e = parse(gen.next(4));
    const double t = rng.uniform(-5.0, 5.0);  // also outside the generator's safe range
    try {
      const Dual<double> d = eval_dual(e, t);
      ASSERT_FALSE(std::isnan(d.value) || std::isnan(d.deriv)) << e.to_string();
    } catch (const Error& err) {
      ASSERT_TRUE(err.code() == ErrorCode::domain || err.code() == ErrorCode::non_finite);
    }
  }
}
