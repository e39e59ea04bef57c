#include "flrwkit/probe.hpp"

#include <cmath>
#include <functional>

#include "flrwkit/format.hpp"

namespace flrwkit {

std::string_view to_string(CurveKind k) {
  switch (k) {
    case CurveKind::constant_R: return "ConstantR";
    case CurveKind::near_null_ingoing: return "NearNullIngoing";
    case CurveKind::custom: return "Custom";
  }
  return "?";
}

namespace {

void check_theta(double theta, double tol) {
  if (!(theta > 0.0 && theta < 3.141592653589793) || std::abs(std::sin(theta)) <= tol)
    throw Error(ErrorCode::degenerate_theta_fixed, "theta = " + format_double(theta) + " lies on the axis");
}

[[noreturn]] void leaves(double t, const std::string& why) {
  throw Error(ErrorCode::curve_leaves_interval, "curve undefined at t = " + format_double(t) + ": " + why);
}

// r(t) along the curve together with dr/dt, both in closed form where possible.
std::function<Dual<double>(double)> radius_function(const SpacetimeSpec& spec, Branch b, const CurveSpec& c) {
  const ScaleFactor& sf = spec.sf;
  switch (c.kind) {
    case CurveKind::constant_R:
      if (!(c.R0 > 0.0)) throw Error(ErrorCode::domain, "ConstantR needs R0 > 0");
      return [&sf, b, R0 = c.R0](double t) {
        const Dual<double> a = sf.a_dual(t);
        const double u = R0 / a.value, du = -u * a.deriv / a.value;
        if (b == Branch::flat) return Dual<double>{u, du};
        return Dual<double>{std::asinh(u), du / std::sqrt(1.0 + u * u)};
      };
    case CurveKind::near_null_ingoing: {
      if (!(c.kappa > 0.0 && c.kappa < 1.0)) throw Error(ErrorCode::domain, "NearNullIngoing needs 0 < kappa < 1");
      if (!(c.r1 > 0.0)) throw Error(ErrorCode::domain, "NearNullIngoing needs r1 > 0");
      if (!sf.contains(c.t1)) throw Error(ErrorCode::curve_leaves_interval, "t1 lies outside the interval");
      return [&sf, c](double t) {
        const double I = integrate([&](double s) { return 1.0 / sf.a(s); }, t, c.t1, classifier_quadrature()).value;
        return Dual<double>{c.r1 + c.kappa * I, -c.kappa / sf.a(t)};
      };
    }
    case CurveKind::custom: {
      const Expr e = parse(c.r_of_t);
      return [e](double t) { return eval_dual(e, t); };
    }
  }
  throw Error(ErrorCode::domain, "unknown curve kind");
}

}  // namespace

ProbeResult probe(const SpacetimeSpec& spec, const CurveSpec& curve, const Thresholds& th) {
  spec.validate();
  const Branch b = branch_for_curvature(spec.K);
  check_theta(curve.theta, kTolExc);
  const ScaleFactor& sf = spec.sf;
  const auto r_of = radius_function(spec, b, curve);
  const double c2 = std::cos(curve.theta) * std::cos(curve.theta);
  const double s2 = std::sin(curve.theta) * std::sin(curve.theta);

  ProbeResult res;
  std::vector<Sample> vR, vr, vG, vC, vK;
  std::size_t timelike = 0;
  for (double t : lower_schedule(sf, sf.default_anchor(), th)) {
    Dual<double> a{};
    Dual<double> rd{};
    try {
      a = sf.a_dual(t);
      rd = r_of(t);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::non_finite) leaves(t, e.what());
      res.notes.push_back("sampling stopped at t = " + format_double(t) + " (overflow)");
      break;
    }
    const double r = rd.value, rdot = rd.deriv;
    if (r == kInf) {
      res.notes.push_back("sampling stopped at t = " + format_double(t) + " (overflow)");
      break;
    }
    if (!(r > 0.0) || !std::isfinite(r)) leaves(t, "r = " + format_double(r) + " is not a positive radius");
    if (!std::isfinite(rdot)) leaves(t, "curve has no finite slope at the sample");
    const double R = b == Branch::flat ? r * a.value : a.value * std::sinh(r);
    const double den = b == Branch::flat ? 1.0 - r * r * a.deriv * a.deriv
                                         : 1.0 + std::sinh(r) * std::sinh(r) * (1.0 - a.deriv * a.deriv);
    if (!std::isfinite(R) || !std::isfinite(den)) {
      res.notes.push_back("sampling stopped at t = " + format_double(t) + " (overflow)");
      break;
    }
    if (std::abs(den) <= kTolExc) {
      res.notes.push_back("skipped t = " + format_double(t) + ": sample on the degenerate set");
      continue;
    }
    const double G = 1.0 / den;
    const double D = G * c2 + s2;
    if (std::abs(D) <= kTolExc) {
      res.notes.push_back("skipped t = " + format_double(t) + ": sample on G = -tan^2(theta)");
      continue;
    }
    const double C = G / D;
    const double r2ap2 = r * r * a.deriv * a.deriv;
    const double norm = -1.0 + a.value * a.value * rdot * rdot;
    if (norm < 0.0) ++timelike;
    res.trace.push_back({t, r, R, G, C, r2ap2, norm});
    vR.emplace_back(t, R);
    vr.emplace_back(t, r);
    vG.emplace_back(t, G);
    vC.emplace_back(t, C);
    vK.emplace_back(t, r2ap2);
  }
  res.R = classify_limit(std::move(vR), th);
  res.r = classify_limit(std::move(vr), th);
  res.G = classify_limit(std::move(vG), th);
  res.C = classify_limit(std::move(vC), th);
  res.r2ap2 = classify_limit(std::move(vK), th);
  res.timelike_fraction = res.trace.empty() ? 0.0 : static_cast<double>(timelike) / static_cast<double>(res.trace.size());
  return res;
}

namespace {

// Big Bang plus the a'(0) condition of the symmetric-class obstruction.
std::pair<bool, std::string> obstruction_hypotheses(const SpacetimeSpec& spec, const Thresholds& th) {
  try {
    const LimitDiag la = limit_at_lower(spec.sf, Quantity::a, th);
    const LimitDiag lp = limit_at_lower(spec.sf, Quantity::a_prime, th);
    const std::string ev = "lim a = " + la.label() + ", lim a' = " + lp.label();
    if (la.kind != LimitKind::zero) return {false, ev};
    bool ok = false;
    if (spec.K == 0) {
      ok = lp.kind == LimitKind::plus_infinity || (lp.kind == LimitKind::finite && lp.value > 0.0);
    } else {
      ok = lp.kind == LimitKind::plus_infinity || lp.kind == LimitKind::zero ||
           (lp.kind == LimitKind::finite && lp.value >= 0.0 && std::abs(lp.value - 1.0) > 1e-3);
    }
    return {ok, ev};
  } catch (const Error& e) {
    return {false, e.what()};
  }
}

}  // namespace

WitnessResult witness_degeneracy(const SpacetimeSpec& spec, double R0, double theta, double eps, const Thresholds& th) {
  spec.validate();
  const Branch b = branch_for_curvature(spec.K);
  check_theta(theta, kTolExc);
  if (!(R0 > 0.0) || !(eps > 0.0)) throw Error(ErrorCode::domain, "witness search needs R0 > 0 and eps > 0");
  const ScaleFactor& sf = spec.sf;
  const double c2 = std::cos(theta) * std::cos(theta), s2 = std::sin(theta) * std::sin(theta);

  struct Eval {
    bool ok;
    double G, C;
  };
  auto at = [&](double t) -> Eval {
    try {
      const double a = sf.a(t);
      const double r = b == Branch::flat ? R0 / a : std::asinh(R0 / a);
      const double den = G_denominator(b, sf, t, r);
      if (std::abs(den) <= kTolExc || !std::isfinite(den)) return {false, 0.0, 0.0};
      const double G = 1.0 / den;
      const double D = G * c2 + s2;
      if (std::abs(D) <= kTolExc) return {false, G, 0.0};
      const double C = G / D;
      return {std::abs(G) <= eps && std::abs(C) <= eps, G, C};
    } catch (const Error& e) {
      if (e.code() == ErrorCode::non_finite) return {false, 0.0, 0.0};
      throw;
    }
  };

  WitnessResult w;
  const auto [established, evidence] = obstruction_hypotheses(spec, th);
  w.hypotheses_established = established;
  const std::string tag = established ? "" : "hypotheses not established (" + evidence + "); ";

  const std::vector<double> ts = lower_schedule(sf, sf.default_anchor(), th);
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const Eval e = at(ts[k]);
    if (!e.ok) continue;
    double hold = ts[k];
    if (k > 0) {
      double fail = ts[k - 1];
      for (int it = 0; it < 200 && std::abs(fail - hold) > 4e-16 * std::abs(fail); ++it) {
        const double mid = 0.5 * (fail + hold);
        (at(mid).ok ? hold : fail) = mid;
      }
    }
    const Eval best = at(hold);
    w.found = true;
    w.t_star = hold;
    w.G = best.G;
    w.C = best.C;
    w.note = tag + "witness at t* = " + format_double(hold);
    return w;
  }
  w.note = tag + "no witness within the schedule";
  return w;
}

}  // namespace flrwkit
