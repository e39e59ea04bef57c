#include "flrwkit/axi_chart.hpp"

#include <cmath>
#include <numbers>

#include "flrwkit/format.hpp"
#include "flrwkit/ode.hpp"

namespace flrwkit {

namespace {

std::string point(double T, double R) { return "(T, R) = (" + format_double(T) + ", " + format_double(R) + ")"; }

bool in_box(const TRBox& b, double T, double R) {
  return T >= b.T_min && T <= b.T_max && R >= b.R_min && R <= b.R_max;
}

}  // namespace

SyntheticFG::SyntheticFG(std::string F_text, std::string G_text, TRBox box)
    : F_text_(std::move(F_text)),
      G_text_(std::move(G_text)),
      F_(parse(F_text_, "R")),
      G_(parse(G_text_, "R")),
      box_(box) {
  if (!(box_.T_min <= box_.T_max) || !(box_.R_min < box_.R_max) || !(box_.R_min > 0.0))
    throw Error(ErrorCode::domain, "synthetic field box needs T_min <= T_max and 0 < R_min < R_max");
}

double SyntheticFG::F(double, double R) const { return eval(F_, R); }
double SyntheticFG::G(double, double R) const { return eval(G_, R); }

std::string SyntheticFG::describe() const {
  return "synthetic F(R) = " + F_text_ + ", G(R) = " + G_text_ + " on R in [" + format_double(box_.R_min) + ", " +
         format_double(box_.R_max) + "]";
}

ChartFG::ChartFG(std::shared_ptr<const SphericalChart> chart, std::optional<TRBox> box)
    : chart_(std::move(chart)), box_(box ? *box : chart_->safe_box()) {
  if (box && !chart_->covers(*box))
    throw Error(ErrorCode::domain, "the (T, R) box [" + format_double(box->T_min) + ", " + format_double(box->T_max) +
                                       "] x [" + format_double(box->R_min) + ", " + format_double(box->R_max) +
                                       "] is not covered by the spherical chart region");
}

double ChartFG::F(double T, double R) const {
  const auto [t, r] = chart_->locate(T, R);
  return chart_->F(t, r);
}

double ChartFG::G(double T, double R) const {
  const auto [t, r] = chart_->locate(T, R);
  return chart_->G(t, r);
}

std::string ChartFG::describe() const {
  return "spherical chart (" + chart_->metadata() + "), a(t) = " + chart_->sf().text();
}

Profile::Profile(std::string text) : expr_(parse(text, "x")), text_(std::move(text)) {
  const double f0 = eval(*expr_, 0.0);
  if (std::abs(f0) > 1e-14)
    throw Error(ErrorCode::profile_violation, "profile must satisfy f(0) = 0 (got " + format_double(f0) + ")");
  // f' is continuous, so a sign change between neighbouring samples means it
  // vanishes in between even when no sample hits the zero.
  double prev_x = 0.0, prev_d = 0.0;
  for (int k = 0; k <= 2000; ++k) {
    const double x = -10.0 + 0.01 * k;
    const double d = f_prime(x);
    if (k > 0 && (d > 0) != (prev_d > 0))
      throw Error(ErrorCode::profile_violation, "profile derivative changes sign between x = " +
                                                    format_double(prev_x) + " and x = " + format_double(x));
    prev_x = x;
    prev_d = d;
  }
}

double Profile::f(double x) const { return expr_ ? eval(*expr_, x) : x; }

double Profile::f_prime(double x) const {
  const double d = expr_ ? eval_dual(*expr_, x).deriv : 1.0;
  if (d == 0.0) throw Error(ErrorCode::profile_violation, "profile derivative vanishes at x = " + format_double(x));
  return d;
}

std::string_view to_string(SignCase c) {
  switch (c) {
    case SignCase::case_i: return "CaseI";
    case SignCase::case_ii: return "CaseII";
    case SignCase::case_iii: return "CaseIII";
    case SignCase::degenerate: return "Degenerate";
  }
  return "?";
}

std::string_view to_string(DegeneracyKind k) {
  switch (k) {
    case DegeneracyKind::none: return "None";
    case DegeneracyKind::g_tan_locus: return "GTanLocus";
    case DegeneracyKind::axis_theta: return "AxisTheta";
  }
  return "?";
}

DegeneracyDiag degeneracy(double G, double theta, double tol_exc) {
  const double s = std::sin(theta), c = std::cos(theta);
  if (std::abs(s) <= tol_exc) return {DegeneracyKind::axis_theta, std::abs(s)};
  const double res = std::abs(G * c * c + s * s);
  if (res <= tol_exc) return {DegeneracyKind::g_tan_locus, res};
  return {DegeneracyKind::none, res};
}

SignCase sign_case(double F, double G, double theta, double tol_exc) {
  if (degeneracy(G, theta, tol_exc).kind != DegeneracyKind::none) return SignCase::degenerate;
  if (F == 0.0 || G == 0.0) throw Error(ErrorCode::domain, "sign case needs F and G nonzero");
  if ((F > 0.0) != (G > 0.0))
    throw Error(ErrorCode::domain, "F and G of opposite sign do not give a Lorentzian metric");
  if (F > 0.0) return SignCase::case_i;
  const double c = std::cos(theta), s = std::sin(theta);
  return G * c * c + s * s < 0.0 ? SignCase::case_ii : SignCase::case_iii;
}

AxiChart::AxiChart(std::shared_ptr<const FGSource> source, std::optional<double> R0, Profile profile,
                   double tol_exc)
    : source_(std::move(source)), profile_(std::move(profile)), tol_exc_(tol_exc) {
  const TRBox b = source_->domain();
  R0_ = R0 ? *R0 : 0.5 * (b.R_min + b.R_max);
  if (!(R0_ >= b.R_min && R0_ <= b.R_max))
    throw Error(ErrorCode::domain, "R0 = " + format_double(R0_) + " lies outside the source R-range [" +
                                       format_double(b.R_min) + ", " + format_double(b.R_max) + "]");
}

void AxiChart::check_R(double T, double R) const {
  if (!in_box(source_->domain(), T, R))
    throw Error(ErrorCode::sample_outside_region, point(T, R) + " lies outside the source domain");
}

double AxiChart::int_G_over_R(double T, double R) const {
  check_R(T, R);
  if (R == R0_) return 0.0;
  auto integrand = [&](double s) {
    double g = 0.0;
    try {
      g = source_->G(T, s);
    } catch (const Error& e) {
      if (e.code() == ErrorCode::sample_outside_region) throw;
      throw Error(ErrorCode::path_crosses_singularity,
                  "G cannot be evaluated at " + point(T, s) + " on the quadrature path: " + e.what());
    }
    if (!std::isfinite(g))
      throw Error(ErrorCode::path_crosses_singularity, "G is not finite at " + point(T, s));
    return g / s;
  };
  QuadratureOptions q;
  q.abs_tol = 1e-13;
  q.rel_tol = 1e-14;
  try {
    return integrate(integrand, R0_, R, q).value;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::non_finite)
      throw Error(ErrorCode::path_crosses_singularity, std::string("quadrature of G/R diverged: ") + e.what());
    throw;
  }
}

double AxiChart::z(double T, double R, double theta) const {
  const double arg = std::cos(theta) * std::exp(int_G_over_R(T, R));
  profile_.f_prime(arg);
  return profile_.f(arg);
}

double AxiChart::z_theta(double T, double R, double theta) const {
  const double e = std::exp(int_G_over_R(T, R));
  return -std::sin(theta) * e * profile_.f_prime(std::cos(theta) * e);
}

DegeneracyDiag AxiChart::degeneracy_at(double T, double R, double theta) const {
  check_R(T, R);
  return degeneracy(source_->G(T, R), theta, tol_exc_);
}

SignCase AxiChart::sign_case_at(double T, double R, double theta) const {
  check_R(T, R);
  return sign_case(source_->F(T, R), source_->G(T, R), theta, tol_exc_);
}

AxiCoeffs AxiChart::coeffs(double T, double R, double theta) const {
  check_R(T, R);
  const double G = source_->G(T, R);
  const DegeneracyDiag d = degeneracy(G, theta, tol_exc_);
  if (d.kind != DegeneracyKind::none)
    throw Error(ErrorCode::degenerate_point, std::string(to_string(d.kind)) + " at " + point(T, R) +
                                                 ", theta = " + format_double(theta));
  const double c = std::cos(theta), s = std::sin(theta);
  const double D = G * c * c + s * s;
  const double I = int_G_over_R(T, R);
  const double fp = profile_.f_prime(c * std::exp(I));
  AxiCoeffs k{};
  k.A = source_->F(T, R);
  k.C = G / D;
  k.B = R * R / (std::exp(2.0 * I) * fp * fp * D);
  return k;
}

double AxiChart::jacobian(double T, double R, double theta) const {
  check_R(T, R);
  const double G = source_->G(T, R);
  const double c = std::cos(theta), s = std::sin(theta);
  const double e = std::exp(int_G_over_R(T, R));
  return profile_.f_prime(c * e) * e * (G * c * c + s * s);
}

std::vector<CurvePoint> AxiChart::characteristic_curve(double T, double theta0, double R_from, double R_to) const {
  check_R(T, R_from);
  check_R(T, R_to);
  const double tol = tol_exc_;
  auto at_pole = [&](double th) { return std::abs(std::sin(th)) <= tol; };
  auto at_equator = [&](double th) { return std::abs(std::cos(th)) <= tol; };
  if (!(theta0 > 0.0 && theta0 < std::numbers::pi) || at_pole(theta0))
    throw Error(ErrorCode::theta_hit_pole, "theta0 = " + format_double(theta0) + " lies on the axis");
  if (at_equator(theta0))
    throw Error(ErrorCode::theta_hit_equator, "theta0 = pi/2 is excluded by the characteristic equation");
  auto rhs = [&](double R, double th) { return source_->G(T, R) * std::cos(th) / (R * std::sin(th)); };
  auto admissible = [&](double, double th) {
    return th > 0.0 && th < std::numbers::pi && !at_pole(th) && !at_equator(th);
  };
  auto never = [](double, double) { return false; };
  OdeOptions opt;
  opt.rel_tol = 1e-12;
  opt.abs_tol = 1e-14;
  const auto out = integrate_ode(rhs, R_from, theta0, R_to, opt, admissible, never, true);
  if (out.status != OdeStatus::reached_end) {
    const double th = out.last.y;
    const std::string where = " near R = " + format_double(out.last.x) + " (theta = " + format_double(th) + ")";
    // Extrapolate one step to see which locus blocks the curve.
    double next = th;
    try {
      next = th + out.last_step * rhs(out.last.x, th);
    } catch (const Error&) {
    }
    const bool pole_side = std::abs(std::sin(next)) < std::abs(std::cos(next)) || next <= 0.0 ||
                           next >= std::numbers::pi;
    if (pole_side) throw Error(ErrorCode::theta_hit_pole, "characteristic reached the axis" + where);
    throw Error(ErrorCode::theta_hit_equator, "characteristic reached theta = pi/2" + where);
  }
  std::vector<CurvePoint> pts;
  pts.reserve(out.trajectory.size());
  for (const auto& p : out.trajectory) pts.push_back({p.x, p.y});
  return pts;
}

std::string AxiChart::metadata() const {
  return "source: " + source_->describe() + "; R0 = " + format_double(R0_) +
         " (quadrature base; changing it rescales e^I); profile f(x) = " + profile_.text();
}

}  // namespace flrwkit
