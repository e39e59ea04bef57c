#include "flrwkit/sph_chart.hpp"

#include <algorithm>
#include <cmath>

#include "flrwkit/format.hpp"
#include "flrwkit/ode.hpp"

namespace flrwkit {

std::string_view to_string(Branch b) { return b == Branch::flat ? "flat" : "hyperbolic"; }

std::string_view to_string(Labeling l) { return l == Labeling::axis ? "axis" : "slice"; }

std::string_view to_string(ExcludedKind k) {
  switch (k) {
    case ExcludedKind::degenerate_jacobian: return "DegenerateJacobian";
    case ExcludedKind::axis: return "Axis";
    case ExcludedKind::outside_interval: return "OutsideInterval";
  }
  return "?";
}

Branch branch_for_curvature(int K) {
  if (K == 0) return Branch::flat;
  if (K == -1) return Branch::hyperbolic;
  throw Error(ErrorCode::domain, "symmetric charts exist for K = 0 and K = -1 only (got K = " + std::to_string(K) + ")");
}

namespace {

void require_radius(double r) {
  if (!(r >= 0.0) || !std::isfinite(r))
    throw Error(ErrorCode::domain, "coordinate radius must be finite and non-negative (got " + format_double(r) + ")");
}

}  // namespace

double R_of(Branch b, const ScaleFactor& sf, double t, double r) {
  require_radius(r);
  const double a = sf.a(t);
  return b == Branch::flat ? r * a : a * std::sinh(r);
}

std::pair<double, double> R_partials(Branch b, const ScaleFactor& sf, double t, double r) {
  require_radius(r);
  const Dual<double> a = sf.a_dual(t);
  if (b == Branch::flat) return {r * a.deriv, a.value};
  return {a.deriv * std::sinh(r), a.value * std::cosh(r)};
}

double G_denominator(Branch b, const ScaleFactor& sf, double t, double r) {
  require_radius(r);
  const double ap = sf.a_dual(t).deriv;
  if (b == Branch::flat) return 1.0 - r * r * ap * ap;
  // cosh^2 r - sinh^2 r a'^2, written to avoid cancellation at large r.
  const double s = std::sinh(r);
  return 1.0 + s * s * (1.0 - ap * ap);
}

double G_of(Branch b, const ScaleFactor& sf, double t, double r, double tol_exc) {
  const double den = G_denominator(b, sf, t, r);
  if (std::abs(den) <= tol_exc)
    throw Error(ErrorCode::degenerate_point, "G is singular at (t, r) = (" + format_double(t) + ", " +
                                                 format_double(r) + "): denominator " + format_double(den));
  return 1.0 / den;
}

double radial_scale(Branch, const ScaleFactor& sf, double t) { return sf.a(t); }

std::optional<ExcludedSetDiag> excluded_set(Branch b, const ScaleFactor& sf, double t, double r, double tol_exc) {
  if (!sf.contains(t)) return ExcludedSetDiag{ExcludedKind::outside_interval, 0.0};
  if (r == 0.0) return ExcludedSetDiag{ExcludedKind::axis, 0.0};
  const double den = std::abs(G_denominator(b, sf, t, r));
  if (den <= tol_exc) return ExcludedSetDiag{ExcludedKind::degenerate_jacobian, den};
  return std::nullopt;
}

SphericalChart::SphericalChart(const SphChartParams& p, const Region& region)
    : branch_(p.branch),
      sf_(p.sf),
      labeling_(p.labeling),
      t_ref_(p.t_ref.value_or(p.sf.default_anchor())),
      region_(region),
      tol_exc_(p.tol_exc) {}

namespace {

// k(t, r) = T_r / T_t = a a' w(r) with w = r (flat) or tanh r (hyperbolic).
template <class N>
N weight(Branch b, const N& r) {
  using std::tanh;
  return b == Branch::flat ? r : tanh(r);
}

struct NodeLabel {
  double T, T_t, T_r;
};

[[noreturn]] void escaped(double t, double r, const std::string& why) {
  throw Error(ErrorCode::characteristic_escaped_region,
              "characteristic from (t, r) = (" + format_double(t) + ", " + format_double(r) + ") " + why);
}

// Axis labeling: follow dt/dr = -a a' w(r) from (t0, r0) to r = 0, carrying the
// sensitivity of t to t0; the label is t(0).
NodeLabel label_axis(Branch b, const ScaleFactor& sf, double t0, double r0, const OdeOptions& opt) {
  using D1 = Dual<double>;
  using D2 = Dual<D1>;
  auto rhs = [&](double r, const D1& t) {
    const D2 v = sf.eval(D2{t, D1{1.0, 0.0}});
    return -(v.value * v.deriv) * D1(weight(b, r));
  };
  auto inside = [&](double, const D1& t) { return sf.contains(t.value); };
  auto never = [](double, const D1&) { return false; };
  const auto out = integrate_ode(rhs, r0, D1{t0, 1.0}, 0.0, opt, inside, never);
  if (out.status != OdeStatus::reached_end) escaped(t0, r0, "left the time interval before reaching the axis");
  const Dual<double> a = sf.a_dual(t0);
  const double T_t = out.last.y.deriv;
  return {out.last.y.value, T_t, T_t * a.value * a.deriv * weight(b, r0)};
}

// Slice labeling: follow dr/dt = -1/(a a' w(r)) from (t0, r0) to t = t_ref,
// carrying the sensitivity of r to r0; the label is r(t_ref).
NodeLabel label_slice(Branch b, const ScaleFactor& sf, double t_ref, double t0, double r0, const OdeOptions& opt) {
  using D1 = Dual<double>;
  const Dual<double> a0 = sf.a_dual(t0);
  const double k0 = a0.value * a0.deriv * weight(b, r0);
  if (k0 == 0.0) escaped(t0, r0, "is tangent to the slice (a' = 0); slice labeling is undefined");
  auto rhs = [&](double t, const D1& r) {
    const Dual<double> a = sf.a_dual(t);
    return D1(-1.0) / (D1(a.value * a.deriv) * weight(b, r));
  };
  auto positive = [](double, const D1& r) { return r.value > 0.0; };
  auto never = [](double, const D1&) { return false; };
  const auto out = integrate_ode(rhs, t0, D1{r0, 1.0}, t_ref, opt, positive, never);
  if (out.status != OdeStatus::reached_end) escaped(t0, r0, "hit the axis before reaching the reference slice");
  const double T_r = out.last.y.deriv;
  return {out.last.y.value, T_r / k0, T_r};
}

}  // namespace

SphericalChart SphericalChart::build(const SphChartParams& p, const Region& rg, const GridDims& dims) {
  if (!(rg.t_min < rg.t_max) || !(rg.r_min < rg.r_max))
    throw Error(ErrorCode::domain, "chart region must be a non-empty rectangle");
  if (!(rg.r_min > 0.0))
    throw Error(ErrorCode::domain, "chart region must stay off the axis (r_min > 0)");
  if (!p.sf.contains(rg.t_min) || !p.sf.contains(rg.t_max))
    throw Error(ErrorCode::domain, "chart region [" + format_double(rg.t_min) + ", " + format_double(rg.t_max) +
                                       "] is not inside the scale-factor interval");
  if (p.labeling == Labeling::slice && p.t_ref && !p.sf.contains(*p.t_ref))
    throw Error(ErrorCode::domain, "reference slice t_ref lies outside the interval");

  SphericalChart c(p, rg);
  const GridAxis ta{rg.t_min, rg.t_max, dims.nt};
  const GridAxis ra{rg.r_min, rg.r_max, dims.nr};

  // The region must lie where G > 0, away from the degenerate set; check on a
  // grid twice as fine as the chart grid.
  const std::size_t ct = 2 * dims.nt - 1, cr = 2 * dims.nr - 1;
  const GridAxis cta{rg.t_min, rg.t_max, ct}, cra{rg.r_min, rg.r_max, cr};
  for (std::size_t i = 0; i < ct; ++i) {
    for (std::size_t j = 0; j < cr; ++j) {
      const double t = cta.node(i), r = cra.node(j);
      const double den = G_denominator(p.branch, p.sf, t, r);
      if (!(den > p.tol_exc))
        throw Error(ErrorCode::region_crosses_degenerate_set,
                    "region meets or crosses the degenerate set at (t, r) = (" + format_double(t) + ", " +
                        format_double(r) + "): G denominator " + format_double(den));
    }
  }

  c.T_ = HermiteGrid(ta, ra);
  c.F_ = HermiteGrid(ta, ra);
  OdeOptions opt;
  opt.rel_tol = p.ode_rel_tol;
  opt.abs_tol = p.ode_rel_tol * 1e-3;
  for (std::size_t i = 0; i < dims.nt; ++i) {
    for (std::size_t j = 0; j < dims.nr; ++j) {
      const double t = ta.node(i), r = ra.node(j);
      const NodeLabel l = p.labeling == Labeling::axis ? label_axis(p.branch, p.sf, t, r, opt)
                                                       : label_slice(p.branch, p.sf, c.t_ref_, t, r, opt);
      if (i == 0 && j == 0) c.sign_ = l.T_t < 0.0 ? -1 : 1;
      const std::size_t k = c.T_.index(i, j);
      c.T_.f[k] = c.sign_ * l.T;
      c.T_.fx[k] = c.sign_ * l.T_t;
      c.T_.fy[k] = c.sign_ * l.T_r;
      const auto [Rt, Rr] = R_partials(p.branch, p.sf, t, r);
      (void)Rr;
      const double G = 1.0 / G_denominator(p.branch, p.sf, t, r);
      c.F_.f[k] = (G * Rt * Rt + 1.0) / (l.T_t * l.T_t);
    }
  }
  c.T_.mixed_from_fy();
  c.F_.derivatives_from_values();
  return c;
}

bool SphericalChart::contains(double t, double r) const {
  return t >= region_.t_min && t <= region_.t_max && r >= region_.r_min && r <= region_.r_max;
}

double SphericalChart::T(double t, double r) const { return T_.value(t, r); }

double SphericalChart::F(double t, double r) const { return F_.value(t, r); }

std::array<double, 3> SphericalChart::T_with_gradient(double t, double r) const { return T_.eval(t, r); }

double SphericalChart::r_at(double t, double R) const {
  const double a = sf_.a(t);
  return branch_ == Branch::flat ? R / a : std::asinh(R / a);
}

std::pair<double, double> SphericalChart::R_range() const {
  double lo = kInf, hi = -kInf;
  const GridAxis ta{region_.t_min, region_.t_max, 65};
  for (std::size_t i = 0; i < ta.n; ++i) {
    for (double r : {region_.r_min, region_.r_max}) {
      const double R = R_of(branch_, sf_, ta.node(i), r);
      lo = std::min(lo, R);
      hi = std::max(hi, R);
    }
  }
  return {lo, hi};
}

// Times at which constant-R curves enter and leave the region; requires r_at
// to decrease in t (a' > 0), which holds wherever G > 0 admits the inverse map.
std::pair<double, double> SphericalChart::t_span_at(double R) const {
  auto bisect = [&](double lo, double hi, auto&& above) {
    for (int it = 0; it < 200 && hi - lo > 4.0 * std::numeric_limits<double>::epsilon() * std::abs(hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (above(mid) ? hi : lo) = mid;
    }
    return hi;
  };
  double t_lo = region_.t_min, t_hi = region_.t_max;
  if (r_at(t_lo, R) > region_.r_max) {
    if (r_at(t_hi, R) > region_.r_max) return {1.0, 0.0};
    t_lo = bisect(t_lo, t_hi, [&](double t) { return r_at(t, R) <= region_.r_max; });
  }
  if (r_at(t_hi, R) < region_.r_min) {
    if (r_at(t_lo, R) < region_.r_min) return {1.0, 0.0};
    t_hi = bisect(t_lo, t_hi, [&](double t) { return r_at(t, R) < region_.r_min; });
    t_hi = std::nextafter(t_hi, -kInf);
    while (t_hi > t_lo && r_at(t_hi, R) < region_.r_min) t_hi = std::nextafter(t_hi, -kInf);
  }
  return {t_lo, t_hi};
}

std::optional<std::pair<double, double>> SphericalChart::T_range_at(double R) const {
  if (!(R > 0.0)) return std::nullopt;
  const auto [t_lo, t_hi] = t_span_at(R);
  if (!(t_lo < t_hi)) return std::nullopt;
  auto clamp_r = [&](double t) { return std::clamp(r_at(t, R), region_.r_min, region_.r_max); };
  return std::make_pair(T(t_lo, clamp_r(t_lo)), T(t_hi, clamp_r(t_hi)));
}

std::pair<double, double> SphericalChart::locate(double Tq, double R) const {
  const auto range = T_range_at(R);
  if (!range || Tq < range->first || Tq > range->second)
    throw Error(ErrorCode::sample_outside_region,
                "(T, R) = (" + format_double(Tq) + ", " + format_double(R) + ") is not covered by the chart region");
  auto [t_lo, t_hi] = t_span_at(R);
  auto clamp_r = [&](double t) { return std::clamp(r_at(t, R), region_.r_min, region_.r_max); };
  for (int it = 0; it < 200 && t_hi - t_lo > 2.0 * std::numeric_limits<double>::epsilon() * std::abs(t_hi); ++it) {
    const double mid = 0.5 * (t_lo + t_hi);
    (T(mid, clamp_r(mid)) < Tq ? t_lo : t_hi) = mid;
  }
  const double t = 0.5 * (t_lo + t_hi);
  return {t, clamp_r(t)};
}

bool SphericalChart::covers(const TRBox& box) const {
  constexpr int kSamples = 33;
  for (int k = 0; k < kSamples; ++k) {
    const double R = box.R_min + (box.R_max - box.R_min) * k / (kSamples - 1);
    const auto range = T_range_at(R);
    if (!range || range->first > box.T_min || range->second < box.T_max) return false;
  }
  return true;
}

TRBox SphericalChart::safe_box(std::optional<double> R_centre) const {
  const auto [R_lo, R_hi] = R_range();
  const double mid = R_centre.value_or(0.5 * (R_lo + R_hi));
  if (!(mid > R_lo && mid < R_hi))
    throw Error(ErrorCode::sample_outside_region,
                "R = " + format_double(mid) + " is not inside the chart's R-range [" + format_double(R_lo) + ", " +
                    format_double(R_hi) + "]");
  double half = 0.9 * std::min(mid - R_lo, R_hi - mid);
  for (int attempt = 0; attempt < 40; ++attempt, half *= 0.7) {
    double T_lo = -kInf, T_hi = kInf;
    bool covered = true;
    constexpr int kSamples = 33;
    for (int k = 0; k < kSamples && covered; ++k) {
      const double R = mid - half + 2.0 * half * k / (kSamples - 1);
      const auto range = T_range_at(R);
      if (!range) {
        covered = false;
        break;
      }
      T_lo = std::max(T_lo, range->first);
      T_hi = std::min(T_hi, range->second);
    }
    if (covered && T_hi > T_lo) {
      const double inset = 0.05 * (T_hi - T_lo);
      return {T_lo + inset, T_hi - inset, mid - half, mid + half};
    }
  }
  throw Error(ErrorCode::sample_outside_region, "no (T, R) rectangle fits inside the chart region");
}

SphericalChart SphericalChart::with_scaled_F(double factor) const {
  SphericalChart c = *this;
  for (auto* v : {&c.F_.f, &c.F_.fx, &c.F_.fy, &c.F_.fxy})
    for (double& x : *v) x *= factor;
  return c;
}

bool SphericalChart::T_monotone_in_t() const {
  const GridAxis& ta = T_.x_axis();
  const GridAxis& ra = T_.y_axis();
  for (std::size_t j = 0; j < ra.n; ++j)
    for (std::size_t i = 0; i + 1 < ta.n; ++i)
      if (!(T_.f[T_.index(i + 1, j)] > T_.f[T_.index(i, j)]) || !(T_.fx[T_.index(i, j)] > 0.0)) return false;
  return true;
}

std::string SphericalChart::metadata() const {
  std::string m = "branch=" + std::string(to_string(branch_)) + "; labeling=" + std::string(to_string(labeling_));
  if (labeling_ == Labeling::axis)
    m += " (T = time at which the level curve of T reaches r = 0)";
  else
    m += " (T = radius at which the level curve of T crosses t = " + format_double(t_ref_) + ")";
  if (branch_ == Branch::hyperbolic) m += "; R = a(t) sinh(r), as forced by G = a^2/(R^2 (1 - a'^2) + a^2)";
  return m;
}

}  // namespace flrwkit
