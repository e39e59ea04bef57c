#pragma once

#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "flrwkit/expr.hpp"
#include "flrwkit/quadrature.hpp"
#include "flrwkit/sph_chart.hpp"

namespace flrwkit {

/// Source of the strongly spherically symmetric coefficients F(T, R), G(T, R).
class FGSource {
 public:
  virtual ~FGSource() = default;
  virtual double F(double T, double R) const = 0;
  virtual double G(double T, double R) const = 0;
  /// (T, R) rectangle on which F and G may be queried.
  virtual TRBox domain() const = 0;
  virtual std::string describe() const = 0;
};

/// F and G given directly as functions of R (independent of T), e.g.
/// F = 1 - R^2, G = 1/(1 - R^2) on R in (0.1, 0.9).
class SyntheticFG final : public FGSource {
 public:
  /// Expressions use the variable R.
  SyntheticFG(std::string F_text, std::string G_text, TRBox box);

  double F(double T, double R) const override;
  double G(double T, double R) const override;
  TRBox domain() const override { return box_; }
  std::string describe() const override;

 private:
  std::string F_text_, G_text_;
  Expr F_, G_;
  TRBox box_;
};

/// Adaptor exposing a built spherical chart in (T, R) via its inverse map.
class ChartFG final : public FGSource {
 public:
  /// Uses the chart's safe_box() unless a box is given; a given box must be
  /// covered by the chart (Error{domain} otherwise).
  explicit ChartFG(std::shared_ptr<const SphericalChart> chart, std::optional<TRBox> box = {});

  double F(double T, double R) const override;
  double G(double T, double R) const override;
  TRBox domain() const override { return box_; }
  std::string describe() const override;
  const SphericalChart& chart() const { return *chart_; }

 private:
  std::shared_ptr<const SphericalChart> chart_;
  TRBox box_;
};

/// Profile f with f(0) = 0 and f' != 0; identity unless an expression in x is given.
class Profile {
 public:
  Profile() = default;  // identity
  /// Validates f(0) = 0 and f' != 0 at 2001 points of [-10, 10], rejecting
  /// sign changes of f' between neighbouring points; throws
  /// Error{profile_violation} otherwise.
  explicit Profile(std::string text);

  bool is_identity() const { return !expr_; }
  const std::string& text() const { return text_; }
  double f(double x) const;
  /// Throws Error{profile_violation} if f'(x) = 0.
  double f_prime(double x) const;

 private:
  std::optional<Expr> expr_;
  std::string text_ = "x";
};

enum class SignCase { case_i, case_ii, case_iii, degenerate };
std::string_view to_string(SignCase c);

struct AxiCoeffs {
  double A, B, C;
  double D1 = 0.0, D2 = 0.0, D3 = 0.0;
};

enum class DegeneracyKind { none, g_tan_locus, axis_theta };
std::string_view to_string(DegeneracyKind k);

struct DegeneracyDiag {
  DegeneracyKind kind = DegeneracyKind::none;
  double residual = 0.0;  // |G cos^2(theta) + sin^2(theta)|, or |sin(theta)| on the axis
};

/// Axis is reported when |sin(theta)| <= tol_exc, the locus G = -tan^2(theta)
/// when |G cos^2(theta) + sin^2(theta)| <= tol_exc.
DegeneracyDiag degeneracy(double G, double theta, double tol_exc = kTolExc);

/// Trichotomy of the metric signs (A, B, C): case (i) F > 0, G > 0;
/// case (ii) F < 0, G < -tan^2; case (iii) F < 0, -tan^2 < G < 0.
/// F and G of opposite signs violate the Lorentzian signature and throw.
SignCase sign_case(double F, double G, double theta, double tol_exc = kTolExc);

struct CurvePoint {
  double R;
  double theta;
};

/// Strongly axisymmetric chart (T, z, rho) built on top of an (F, G) source:
/// z = f(cos(theta) e^{I}), rho = R sin(theta), I = int_{R0}^{R} G(T, s)/s ds.
class AxiChart {
 public:
  /// R0 defaults to the midpoint of the source's R-range.
  AxiChart(std::shared_ptr<const FGSource> source, std::optional<double> R0 = {}, Profile profile = {},
           double tol_exc = kTolExc);

  const FGSource& source() const { return *source_; }
  double R0() const { return R0_; }
  const Profile& profile() const { return profile_; }
  double tol_exc() const { return tol_exc_; }

  /// int_{R0}^{R} G(T, s)/s ds; throws PathCrossesSingularity when G cannot be
  /// evaluated (or is non-finite) along the segment.
  double int_G_over_R(double T, double R) const;

  double z(double T, double R, double theta) const;
  static double rho(double R, double theta) { return R * std::sin(theta); }

  /// Throws DegeneratePoint on the degenerate loci.
  AxiCoeffs coeffs(double T, double R, double theta) const;
  double jacobian(double T, double R, double theta) const;
  /// Closed form of dz/dtheta: -sin(theta) e^{I} f'(cos(theta) e^{I}).
  double z_theta(double T, double R, double theta) const;

  SignCase sign_case_at(double T, double R, double theta) const;
  DegeneracyDiag degeneracy_at(double T, double R, double theta) const;

  /// Integrates d(theta)/dR = G cos(theta) / (R sin(theta)) from (R_from, theta0)
  /// to R_to at fixed T; z is constant along the result. Throws ThetaHitEquator
  /// for theta0 = pi/2 or when theta reaches pi/2, ThetaHitPole when theta
  /// reaches 0 or pi.
  std::vector<CurvePoint> characteristic_curve(double T, double theta0, double R_from, double R_to) const;

  std::string metadata() const;

 private:
  void check_R(double T, double R) const;

  std::shared_ptr<const FGSource> source_;
  double R0_;
  Profile profile_;
  double tol_exc_;
};

}  // namespace flrwkit
