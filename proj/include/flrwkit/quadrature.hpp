#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <numbers>

#include "flrwkit/errors.hpp"

namespace flrwkit {

struct QuadratureOptions {
  double abs_tol = 1e-10;
  double rel_tol = 1e-13;
  int max_depth = 48;
  // Refinement stops once this many integrand evaluations have been spent;
  // later panels are accepted as they are and the result is marked unconverged.
  std::size_t max_evaluations = 2'000'000;
};

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

inline constexpr std::size_t kGaussPoints = 10;

struct GaussRule {
  std::array<double, kGaussPoints> x{};
  std::array<double, kGaussPoints> w{};
};

// Legendre roots by Newton iteration from the Chebyshev-like initial guess.
inline GaussRule make_gauss_rule() {
  constexpr std::size_t n = kGaussPoints;
  GaussRule rule;
  for (std::size_t i = 0; i < n; ++i) {
    double x = std::cos(std::numbers::pi * (static_cast<double>(i) + 0.75) / (static_cast<double>(n) + 0.5));
    double dp = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p0 = 1.0, p1 = x;
      for (std::size_t k = 2; k <= n; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / static_cast<double>(k);
        p0 = p1;
        p1 = pk;
      }
      dp = static_cast<double>(n) * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    rule.x[i] = x;
    rule.w[i] = 2.0 / ((1.0 - x * x) * dp * dp);
  }
  return rule;
}

inline const GaussRule& gauss_rule() {
  static const GaussRule rule = make_gauss_rule();
  return rule;
}

template <class F>
double gauss_panel(F& f, double a, double b, std::size_t& evals) {
  const GaussRule& g = gauss_rule();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double sum = 0.0;
  for (std::size_t i = 0; i < kGaussPoints; ++i) sum += g.w[i] * f(mid + half * g.x[i]);
  evals += kGaussPoints;
  return half * sum;
}

template <class F>
void adapt(F& f, double a, double b, double whole, double tol, int depth,
           const QuadratureOptions& opt, QuadratureResult& out) {
  const double mid = 0.5 * (a + b);
  const double left = gauss_panel(f, a, mid, out.evaluations);
  const double right = gauss_panel(f, mid, b, out.evaluations);
  const double refined = left + right;
  const double err = std::abs(refined - whole);
  if (!std::isfinite(refined)) {
    throw Error(ErrorCode::non_finite, "non-finite integrand on quadrature panel");
  }
  if (err <= std::max(tol, opt.rel_tol * std::abs(refined)) || depth >= opt.max_depth ||
      out.evaluations >= opt.max_evaluations || mid <= a || mid >= b) {
    if (err > std::max(tol, opt.rel_tol * std::abs(refined))) out.converged = false;
    out.value += refined;
    out.error += err;
    return;
  }
  adapt(f, a, mid, left, 0.5 * tol, depth + 1, opt, out);
  adapt(f, mid, b, right, 0.5 * tol, depth + 1, opt, out);
}

}  // namespace detail

/// Composite 10-point Gauss-Legendre on [a, b] with interval bisection until
/// |I(panel) - I(halves)| <= max(abs_tol share, rel_tol * |I|).
/// Returns a signed integral for b < a.
template <class F>
QuadratureResult integrate(F&& f, double a, double b, const QuadratureOptions& opt = {}) {
  QuadratureResult out;
  if (a == b) return out;
  if (b < a) {
    out = integrate(f, b, a, opt);
    out.value = -out.value;
    return out;
  }
  const double whole = detail::gauss_panel(f, a, b, out.evaluations);
  if (!std::isfinite(whole)) throw Error(ErrorCode::non_finite, "non-finite integrand on quadrature panel");
  detail::adapt(f, a, b, whole, opt.abs_tol, 0, opt, out);
  return out;
}

}  // namespace flrwkit
