#pragma once

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flrwkit/dual.hpp"
#include "flrwkit/expr.hpp"
#include "flrwkit/quadrature.hpp"

namespace flrwkit {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

struct SublinearMeta {
  double m = 1.0;  // > 0
  double b = 0.0;  // >= 0
};

struct ScaleFactorMeta {
  bool monotone_increasing = false;
  std::optional<SublinearMeta> sublinear;
  bool positivity_asserted = false;
};

/// The warping function a(t) on the open interval (t_inf, t_sup).
class ScaleFactor {
 public:
  ScaleFactor(Expr func, double t_inf, double t_sup, ScaleFactorMeta meta = {},
              std::string text = {});

  /// Parses `text` with the expression grammar.
  static ScaleFactor from_text(std::string_view text, double t_inf, double t_sup,
                               ScaleFactorMeta meta = {});

  const Expr& expr() const { return expr_; }
  const std::string& text() const { return text_; }
  double t_inf() const { return t_inf_; }
  double t_sup() const { return t_sup_; }
  const ScaleFactorMeta& meta() const { return meta_; }

  bool contains(double t) const { return t > t_inf_ && t < t_sup_; }

  /// Evaluation is rejected outside the open interval and for a(t) <= 0.
  double a(double t) const;
  Dual<double> a_dual(double t) const;

  /// Unchecked generic evaluation for nested dual numbers.
  template <class N>
  N eval(const N& t) const {
    return evaluate(expr_, t);
  }

  /// 1 when it lies inside the interval, otherwise a shifted anchor
  /// (see anchor_rule()).
  double default_anchor() const;
  std::string anchor_rule() const;

 private:
  void require_inside(double t) const;

  Expr expr_;
  double t_inf_;
  double t_sup_;
  ScaleFactorMeta meta_;
  std::string text_;
};

enum class LimitKind { finite, zero, plus_infinity, inconclusive };
std::string_view to_string(LimitKind k);

using Sample = std::pair<double, double>;

struct LimitDiag {
  LimitKind kind = LimitKind::inconclusive;
  double value = 0.0;  // meaningful for finite
  std::vector<Sample> samples;
  std::string note;

  /// "Finite(0.5)", "Zero", ...
  std::string label() const;
};

enum class IntegralKind { convergent, divergent, inconclusive };
std::string_view to_string(IntegralKind k);

struct IntegralDiag {
  IntegralKind kind = IntegralKind::inconclusive;
  double value = 0.0;
  double err = 0.0;
  std::vector<Sample> partials;  // (cutoff, partial integral)
  std::string note;

  std::string label() const;
};

/// Thresholds shared by every one-sided limit and improper-integral verdict.
struct Thresholds {
  double q = 0.5;  // geometric schedule ratio
  int steps = 60;
  double growth_cutoff = 1e12;
  double zero_cutoff = 1e-12;
  double cauchy_rel_tol = 1e-4;
  std::size_t tail = 8;  // samples inspected by the trend rules
  double decay_ratio = 0.95;  // successive ratios at or below this mean geometric decay
  double steady_ratio = 0.98;  // increment ratios at or above this mean no decay
};

/// Classify a sampled one-sided limit. Rules in order:
/// Zero if the last three |v| are below zero_cutoff and non-increasing;
/// Finite if the last three agree within cauchy_rel_tol;
/// PlusInfinity if the last value exceeds growth_cutoff with the last three increasing;
/// Zero if over the tail |v| shrinks by at least decay_ratio per step (power-law decay);
/// PlusInfinity if over the tail the increments are positive and do not decay
/// (power-law or logarithmic growth along a geometric schedule);
/// otherwise Inconclusive.
LimitDiag classify_limit(std::vector<Sample> samples, const Thresholds& th = {});

/// Classify partial integrals P_k over growing domains.
/// Convergent when the increments decay geometrically (value extrapolated with
/// the geometric tail), Divergent when the increments do not decay.
IntegralDiag classify_partials(std::vector<Sample> partials, double quad_err,
                               const Thresholds& th = {});

/// Sample points approaching t_inf from above: t_inf + (anchor - t_inf) q^k for
/// finite t_inf, -(1/q)^k for t_inf = -inf; k = 0..steps.
std::vector<double> lower_schedule(const ScaleFactor& sf, double anchor, const Thresholds& th = {});

enum class Quantity { a, a_prime };

LimitDiag limit_at_lower(const ScaleFactor& sf, Quantity what, const Thresholds& th = {});
LimitDiag limit_at_lower(const ScaleFactor& sf, const std::function<double(double)>& functional,
                         const Thresholds& th = {});

enum class HorizonKind { has_horizon, no_horizon, inconclusive };
std::string_view to_string(HorizonKind k);

struct HorizonDiag {
  HorizonKind kind = HorizonKind::inconclusive;
  IntegralDiag integral;
  double anchor = 1.0;
};

/// Classifies the integral of dt/a from t_inf to the anchor.
/// An explicit anchor outside the interval throws AnchorOutsideInterval.
HorizonDiag has_particle_horizon(const ScaleFactor& sf, std::optional<double> anchor = {},
                                 const Thresholds& th = {});

/// Classifies the integral of a/sqrt(a^2+1) from the anchor to +inf.
IntegralDiag future_integral(const ScaleFactor& sf, const Thresholds& th = {});

/// Limit of a(t) * exp(int_t^anchor ds/a(s)) as t -> t_inf+.
LimitDiag sbierski_hyperbolic_limit(const ScaleFactor& sf, const Thresholds& th = {});

/// Limit of a(t) * int_t^anchor ds/a(s) as t -> -inf.
LimitDiag ling_limit(const ScaleFactor& sf, const Thresholds& th = {});

/// Panel quadrature settings used by every classifier.
QuadratureOptions classifier_quadrature();

}  // namespace flrwkit
