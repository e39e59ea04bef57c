#include "flrwkit/scale_factor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "flrwkit/format.hpp"

namespace flrwkit {

ScaleFactor::ScaleFactor(Expr func, double t_inf, double t_sup, ScaleFactorMeta meta,
                         std::string text)
    : expr_(std::move(func)), t_inf_(t_inf), t_sup_(t_sup), meta_(meta), text_(std::move(text)) {
  if (!(t_inf_ < t_sup_) || std::isnan(t_inf_) || std::isnan(t_sup_))
    throw Error(ErrorCode::domain, "scale factor interval requires t_inf < t_sup");
  if (t_inf_ == kInf || t_sup_ == -kInf)
    throw Error(ErrorCode::domain, "scale factor interval endpoints are reversed infinities");
  if (meta_.sublinear && !(meta_.sublinear->m > 0.0 && meta_.sublinear->b >= 0.0))
    throw Error(ErrorCode::domain, "sublinear meta requires m > 0 and b >= 0");
  if (text_.empty()) text_ = expr_.to_string();
}

ScaleFactor ScaleFactor::from_text(std::string_view text, double t_inf, double t_sup,
                                   ScaleFactorMeta meta) {
  return ScaleFactor(parse(text), t_inf, t_sup, meta, std::string(text));
}

namespace {

// An exact zero only arises from underflow of a positive expression; it is
// reported like an overflow so that samplers stop instead of failing.
void check_positive(double v, double t) {
  if (v == 0.0)
    throw Error(ErrorCode::non_finite, "scale factor underflowed to 0 at t=" + format_double(t));
  if (!(v > 0.0))
    throw Error(ErrorCode::domain, "scale factor not positive at t=" + format_double(t));
}

}  // namespace

void ScaleFactor::require_inside(double t) const {
  if (!contains(t))
    throw Error(ErrorCode::domain, "t=" + format_double(t) + " outside (" + format_double(t_inf_) +
                                       ", " + format_double(t_sup_) + ")");
}

double ScaleFactor::a(double t) const {
  require_inside(t);
  const double v = flrwkit::eval(expr_, t);
  check_positive(v, t);
  return v;
}

Dual<double> ScaleFactor::a_dual(double t) const {
  require_inside(t);
  const Dual<double> v = eval_dual(expr_, t);
  check_positive(v.value, t);
  return v;
}

double ScaleFactor::default_anchor() const {
  if (contains(1.0)) return 1.0;
  if (std::isfinite(t_inf_) && std::isfinite(t_sup_)) return 0.5 * (t_inf_ + t_sup_);
  if (std::isfinite(t_inf_)) return t_inf_ + std::max(1.0, std::abs(t_inf_));
  return t_sup_ - std::max(1.0, std::abs(t_sup_));
}

std::string ScaleFactor::anchor_rule() const {
  if (contains(1.0)) return "anchor 1";
  return "anchor shifted to " + format_double(default_anchor()) + " (1 lies outside the interval)";
}

std::string_view to_string(LimitKind k) {
  switch (k) {
    case LimitKind::finite: return "Finite";
    case LimitKind::zero: return "Zero";
    case LimitKind::plus_infinity: return "PlusInfinity";
    case LimitKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string LimitDiag::label() const {
  if (kind == LimitKind::finite) return "Finite(" + format_double(value) + ")";
  return std::string(to_string(kind));
}

std::string_view to_string(IntegralKind k) {
  switch (k) {
    case IntegralKind::convergent: return "Convergent";
    case IntegralKind::divergent: return "Divergent";
    case IntegralKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

std::string IntegralDiag::label() const {
  if (kind == IntegralKind::convergent)
    return "Convergent(" + format_double(value) + ", err " + format_double(err) + ")";
  return std::string(to_string(kind));
}

std::string_view to_string(HorizonKind k) {
  switch (k) {
    case HorizonKind::has_horizon: return "HasHorizon";
    case HorizonKind::no_horizon: return "NoHorizon";
    case HorizonKind::inconclusive: return "Inconclusive";
  }
  return "?";
}

LimitDiag classify_limit(std::vector<Sample> samples, const Thresholds& th) {
  LimitDiag d;
  d.samples = std::move(samples);
  const auto& s = d.samples;
  const std::size_t n = s.size();
  if (n < 3) {
    d.note = "fewer than three samples";
    return d;
  }
  auto v = [&](std::size_t i) { return s[i].second; };
  auto av = [&](std::size_t i) { return std::abs(s[i].second); };
  const double last = v(n - 1);

  if (av(n - 1) < th.zero_cutoff && av(n - 1) <= av(n - 2) && av(n - 2) <= av(n - 3)) {
    d.kind = LimitKind::zero;
    d.note = "below zero cutoff";
    return d;
  }
  if (last != 0.0 && std::abs(v(n - 2) - last) <= th.cauchy_rel_tol * std::abs(last) &&
      std::abs(v(n - 3) - last) <= th.cauchy_rel_tol * std::abs(last)) {
    d.kind = LimitKind::finite;
    d.value = last;
    d.note = "relative Cauchy criterion";
    return d;
  }
  if (last > th.growth_cutoff && v(n - 1) > v(n - 2) && v(n - 2) > v(n - 3)) {
    d.kind = LimitKind::plus_infinity;
    d.note = "above growth cutoff";
    return d;
  }
  const std::size_t m = std::min(th.tail, n - 1);
  if (m < 6) {
    d.note = "too few samples for trend rules";
    return d;
  }
  const std::size_t first = n - 1 - m;

  bool decays = true;
  const bool same_sign = std::all_of(s.begin() + static_cast<std::ptrdiff_t>(first), s.end(),
                                     [&](const Sample& p) { return p.second * last > 0.0; });
  for (std::size_t i = first; i + 1 < n && decays; ++i)
    decays = av(i + 1) <= th.decay_ratio * av(i);
  if (same_sign && decays) {
    d.kind = LimitKind::zero;
    d.note = "geometric decay along the schedule";
    return d;
  }

  bool grows = last > 0.0;
  for (std::size_t i = first; i + 2 < n && grows; ++i) {
    const double d0 = v(i + 1) - v(i);
    const double d1 = v(i + 2) - v(i + 1);
    grows = d0 > 0.0 && d1 > 0.0 && d1 >= th.steady_ratio * d0;
  }
  if (grows) {
    d.kind = LimitKind::plus_infinity;
    d.note = "non-decaying increments along the schedule";
    return d;
  }
  d.note = "no rule matched";
  return d;
}

IntegralDiag classify_partials(std::vector<Sample> partials, double quad_err, const Thresholds& th) {
  IntegralDiag d;
  d.partials = std::move(partials);
  const auto& p = d.partials;
  const std::size_t n = p.size();
  if (n < 5) {
    d.note = "fewer than five partials";
    return d;
  }
  std::vector<double> inc(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) inc[i] = p[i + 1].second - p[i].second;
  const double last = p.back().second;
  const std::size_t ni = inc.size();

  const double negligible = 4.0 * std::numeric_limits<double>::epsilon() * std::abs(last);
  if (std::abs(inc[ni - 1]) <= negligible && std::abs(inc[ni - 2]) <= negligible &&
      std::abs(inc[ni - 3]) <= negligible) {
    d.kind = IntegralKind::convergent;
    d.value = last;
    d.err = std::abs(inc[ni - 1]) + std::abs(inc[ni - 2]) + std::abs(inc[ni - 3]) + quad_err;
    d.note = "increments below rounding level";
    return d;
  }
  const std::size_t m = std::min(th.tail, ni);
  if (m < 4) {
    d.note = "too few increments";
    return d;
  }
  bool geometric = true;
  bool steady = true;
  double ratio = 0.0;
  for (std::size_t i = ni - m; i + 1 < ni; ++i) {
    if (!(inc[i] > 0.0) || inc[i + 1] < 0.0) {
      geometric = steady = false;
      break;
    }
    ratio = inc[i + 1] / inc[i];
    geometric = geometric && ratio <= th.decay_ratio;
    steady = steady && ratio >= th.steady_ratio;
  }
  if (geometric) {
    const double tail = inc[ni - 1] * ratio / (1.0 - ratio);
    d.kind = IntegralKind::convergent;
    d.value = last + tail;
    d.err = std::abs(tail) + quad_err;
    d.note = "geometric decay of increments (ratio " + format_double(ratio) + ")";
    return d;
  }
  if (steady) {
    d.kind = IntegralKind::divergent;
    d.note = "non-decaying increments (ratio " + format_double(ratio) + ")";
    return d;
  }
  d.note = "increments neither decay geometrically nor stay steady";
  return d;
}

std::vector<double> lower_schedule(const ScaleFactor& sf, double anchor, const Thresholds& th) {
  std::vector<double> ts;
  ts.reserve(static_cast<std::size_t>(th.steps) + 1);
  if (std::isfinite(sf.t_inf())) {
    const double span = anchor - sf.t_inf();
    double f = 1.0;
    for (int k = 0; k <= th.steps; ++k, f *= th.q) {
      const double t = sf.t_inf() + span * f;
      if (!(t > sf.t_inf())) break;
      if (!ts.empty() && t == ts.back()) break;
      ts.push_back(t);
    }
  } else {
    double f = 1.0;
    for (int k = 0; k <= th.steps; ++k, f /= th.q) {
      const double t = std::min(anchor, 0.0) - f;
      if (t < sf.t_sup()) ts.push_back(t);
    }
  }
  return ts;
}

QuadratureOptions classifier_quadrature() {
  QuadratureOptions q;
  q.abs_tol = 1e-10;
  q.rel_tol = 1e-13;
  return q;
}

namespace {

bool is_overflow(const Error& e) { return e.code() == ErrorCode::non_finite; }

LimitDiag sample_limit(const std::vector<double>& ts, const std::function<double(double)>& f,
                       const Thresholds& th) {
  std::vector<Sample> samples;
  std::string stop_note;
  for (double t : ts) {
    try {
      const double v = f(t);
      if (!std::isfinite(v)) {
        stop_note = "sampling stopped at t=" + format_double(t) + " (non-finite value)";
        break;
      }
      samples.emplace_back(t, v);
    } catch (const Error& e) {
      if (!is_overflow(e)) throw;
      stop_note = "sampling stopped at t=" + format_double(t) + " (overflow)";
      break;
    }
  }
  LimitDiag d = classify_limit(std::move(samples), th);
  if (!stop_note.empty()) d.note += "; " + stop_note;
  return d;
}

// Running integrals of 1/a from each schedule point up to the anchor.
struct Cumulative {
  std::vector<double> ts;
  std::vector<double> integrals;
  double quad_err = 0.0;
  std::string stop_note;
};

Cumulative cumulative_inverse_a(const ScaleFactor& sf, double anchor, const std::vector<double>& ts) {
  Cumulative c;
  auto inv = [&](double s) { return 1.0 / sf.a(s); };
  double acc = 0.0;
  double prev = anchor;
  const QuadratureOptions q = classifier_quadrature();
  for (double t : ts) {
    try {
      const QuadratureResult r = integrate(inv, t, prev, q);
      if (!std::isfinite(acc + r.value)) {
        c.stop_note = "integration stopped at t=" + format_double(t) + " (non-finite)";
        break;
      }
      acc += r.value;
      c.quad_err += r.error;
      if (!r.converged && c.stop_note.empty())
        c.stop_note = "quadrature tolerance not reached below t=" + format_double(prev);
    } catch (const Error& e) {
      if (!is_overflow(e)) throw;
      c.stop_note = "integration stopped at t=" + format_double(t) + " (overflow)";
      break;
    }
    c.ts.push_back(t);
    c.integrals.push_back(acc);
    prev = t;
  }
  return c;
}

double resolve_anchor(const ScaleFactor& sf, std::optional<double> anchor) {
  if (!anchor) return sf.default_anchor();
  if (!sf.contains(*anchor))
    throw Error(ErrorCode::anchor_outside_interval,
                "anchor " + format_double(*anchor) + " outside the scale factor interval");
  return *anchor;
}

}  // namespace

LimitDiag limit_at_lower(const ScaleFactor& sf, Quantity what, const Thresholds& th) {
  const auto ts = lower_schedule(sf, sf.default_anchor(), th);
  if (what == Quantity::a) return sample_limit(ts, [&](double t) { return sf.a(t); }, th);
  return sample_limit(ts, [&](double t) { return sf.a_dual(t).deriv; }, th);
}

LimitDiag limit_at_lower(const ScaleFactor& sf, const std::function<double(double)>& functional,
                         const Thresholds& th) {
  return sample_limit(lower_schedule(sf, sf.default_anchor(), th), functional, th);
}

HorizonDiag has_particle_horizon(const ScaleFactor& sf, std::optional<double> anchor,
                                 const Thresholds& th) {
  HorizonDiag h;
  h.anchor = resolve_anchor(sf, anchor);
  auto ts = lower_schedule(sf, h.anchor, th);
  if (!ts.empty() && ts.front() == h.anchor) ts.erase(ts.begin());
  const Cumulative c = cumulative_inverse_a(sf, h.anchor, ts);
  std::vector<Sample> partials;
  partials.emplace_back(h.anchor, 0.0);
  for (std::size_t i = 0; i < c.ts.size(); ++i) partials.emplace_back(c.ts[i], c.integrals[i]);
  h.integral = classify_partials(std::move(partials), c.quad_err, th);
  if (!c.stop_note.empty()) h.integral.note += "; " + c.stop_note;
  switch (h.integral.kind) {
    case IntegralKind::convergent: h.kind = HorizonKind::has_horizon; break;
    case IntegralKind::divergent: h.kind = HorizonKind::no_horizon; break;
    case IntegralKind::inconclusive: h.kind = HorizonKind::inconclusive; break;
  }
  return h;
}

IntegralDiag future_integral(const ScaleFactor& sf, const Thresholds& th) {
  if (std::isfinite(sf.t_sup()))
    throw Error(ErrorCode::finite_upper_endpoint,
                "future integral needs t_sup = +inf (got " + format_double(sf.t_sup()) + ")");
  const double anchor = sf.default_anchor();
  auto integrand = [&](double t) {
    const double a = sf.a(t);
    return a / std::hypot(a, 1.0);
  };
  const QuadratureOptions q = classifier_quadrature();
  std::vector<Sample> partials;
  partials.emplace_back(anchor, 0.0);
  double acc = 0.0, qerr = 0.0, prev = anchor, width = 1.0;
  std::string stop_note;
  for (int k = 1; k <= th.steps; ++k, width /= th.q) {
    const double x = anchor + (width / th.q - 1.0);
    try {
      const QuadratureResult r = integrate(integrand, prev, x, q);
      acc += r.value;
      qerr += r.error;
    } catch (const Error& e) {
      if (!is_overflow(e)) throw;
      stop_note = "integration stopped at X=" + format_double(x) + " (overflow)";
      break;
    }
    partials.emplace_back(x, acc);
    prev = x;
  }
  IntegralDiag d = classify_partials(std::move(partials), qerr, th);
  if (!stop_note.empty()) d.note += "; " + stop_note;
  return d;
}

LimitDiag sbierski_hyperbolic_limit(const ScaleFactor& sf, const Thresholds& th) {
  if (!std::isfinite(sf.t_inf()))
    throw Error(ErrorCode::domain, "hyperbolic limit criterion needs a finite t_inf");
  const double anchor = sf.default_anchor();
  const Cumulative c = cumulative_inverse_a(sf, anchor, lower_schedule(sf, anchor, th));
  std::vector<Sample> samples;
  std::string note = c.stop_note;
  for (std::size_t i = 0; i < c.ts.size(); ++i) {
    const double log_v = std::log(sf.a(c.ts[i])) + c.integrals[i];
    if (log_v > 700.0) {
      note = "sampling stopped at t=" + format_double(c.ts[i]) + " (overflow)";
      break;
    }
    samples.emplace_back(c.ts[i], std::exp(log_v));
  }
  LimitDiag d = classify_limit(std::move(samples), th);
  if (!note.empty()) d.note += "; " + note;
  return d;
}

LimitDiag ling_limit(const ScaleFactor& sf, const Thresholds& th) {
  if (std::isfinite(sf.t_inf()))
    throw Error(ErrorCode::finite_lower_endpoint,
                "past-eternal limit needs t_inf = -inf (got " + format_double(sf.t_inf()) + ")");
  const double anchor = sf.default_anchor();
  const Cumulative c = cumulative_inverse_a(sf, anchor, lower_schedule(sf, anchor, th));
  std::vector<Sample> samples;
  std::string note = c.stop_note;
  for (std::size_t i = 0; i < c.ts.size(); ++i) {
    double a = 0.0;
    try {
      a = sf.a(c.ts[i]);
    } catch (const Error& e) {
      note = "sampling stopped at t=" + format_double(c.ts[i]) + " (" + e.what() + ")";
      break;
    }
    const double v = a * c.integrals[i];
    if (!std::isfinite(v)) break;
    samples.emplace_back(c.ts[i], v);
  }
  LimitDiag d = classify_limit(std::move(samples), th);
  if (!note.empty()) d.note += "; " + note;
  return d;
}

}  // namespace flrwkit
