#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "flrwkit/hermite_grid.hpp"
#include "flrwkit/scale_factor.hpp"

namespace flrwkit {

/// Spatial geometry of the FLRW slices covered by the symmetric chart.
enum class Branch { flat, hyperbolic };
std::string_view to_string(Branch b);

/// Branch for curvature K (0 -> flat, -1 -> hyperbolic); K = +1 throws.
Branch branch_for_curvature(int K);

inline constexpr double kTolExc = 1e-9;

/// Area radius R(t, r): r a(t) (flat) or a(t) sinh r (hyperbolic).
double R_of(Branch b, const ScaleFactor& sf, double t, double r);

/// dR/dt and dR/dr.
std::pair<double, double> R_partials(Branch b, const ScaleFactor& sf, double t, double r);

/// Denominator of G: 1 - r^2 a'^2 (flat) or cosh^2 r - sinh^2 r a'^2 (hyperbolic).
double G_denominator(Branch b, const ScaleFactor& sf, double t, double r);

/// G(t, r) = 1 / G_denominator; throws Error{degenerate_point} when
/// |denominator| <= tol_exc.
double G_of(Branch b, const ScaleFactor& sf, double t, double r, double tol_exc = kTolExc);

/// Radial metric factor s(r) of the slice metric s^2 dr^2: a(t) on both branches.
double radial_scale(Branch b, const ScaleFactor& sf, double t);

enum class ExcludedKind { degenerate_jacobian, axis, outside_interval };
std::string_view to_string(ExcludedKind k);

struct ExcludedSetDiag {
  ExcludedKind kind;
  double distance = 0.0;  // |denominator| for the degenerate set, r for the axis
};

std::optional<ExcludedSetDiag> excluded_set(Branch b, const ScaleFactor& sf, double t, double r,
                                            double tol_exc = kTolExc);

/// How each characteristic is labelled.
/// axis:  by the time at which it reaches r = 0 (regular on the axis);
/// slice: by the radius at which it crosses t = t_ref (singular on the axis).
enum class Labeling { axis, slice };
std::string_view to_string(Labeling l);

struct SphChartParams {
  Branch branch = Branch::flat;
  ScaleFactor sf;
  Labeling labeling = Labeling::axis;
  std::optional<double> t_ref;  // slice labeling only; defaults to the anchor
  double tol_exc = kTolExc;
  double ode_rel_tol = 1e-12;
};

struct Region {
  double t_min, t_max, r_min, r_max;
};

struct GridDims {
  std::size_t nt = 257;
  std::size_t nr = 257;
};

/// Rectangle in (T, R) on which the inverse map is defined everywhere.
struct TRBox {
  double T_min, T_max, R_min, R_max;
};

/// Strongly spherically symmetric chart (T, R) of a flat or hyperbolic FLRW
/// region: R and G are closed-form, T and F are built numerically on a grid
/// by the method of characteristics and interpolated bicubically.
class SphericalChart {
 public:
  /// Throws RegionCrossesDegenerateSet if G is not positive and bounded away
  /// from the degenerate set on the region, CharacteristicEscapedRegion when a
  /// characteristic leaves the time interval before reaching its label.
  static SphericalChart build(const SphChartParams& params, const Region& region, const GridDims& dims);

  Branch branch() const { return branch_; }
  const ScaleFactor& sf() const { return sf_; }
  Labeling labeling() const { return labeling_; }
  double t_ref() const { return t_ref_; }
  int sign() const { return sign_; }
  const Region& region() const { return region_; }
  double tol_exc() const { return tol_exc_; }
  const HermiteGrid& T_grid() const { return T_; }
  const HermiteGrid& F_grid() const { return F_; }

  bool contains(double t, double r) const;

  double R(double t, double r) const { return R_of(branch_, sf_, t, r); }
  double G(double t, double r) const { return G_of(branch_, sf_, t, r, tol_exc_); }
  /// Interpolated fields; off-region queries throw SampleOutsideRegion.
  double T(double t, double r) const;
  double F(double t, double r) const;
  /// {T, T_t, T_r}.
  std::array<double, 3> T_with_gradient(double t, double r) const;

  /// Coordinate radius of the point with area radius R at time t.
  double r_at(double t, double R) const;

  /// Inverse map (T, R) -> (t, r) by bisection along constant R.
  /// Throws SampleOutsideRegion when (T, R) is not covered by the region.
  std::pair<double, double> locate(double T, double R) const;

  /// T range covered along constant R, or nullopt when R is not covered.
  std::optional<std::pair<double, double>> T_range_at(double R) const;

  std::pair<double, double> R_range() const;

  /// A (T, R) rectangle on which locate() succeeds, centred at R_centre (the
  /// middle of the R-range by default), found by shrinking the R half-width
  /// until the admissible T-intervals overlap.
  TRBox safe_box(std::optional<double> R_centre = {}) const;

  /// True when locate() succeeds on the whole rectangle (checked along 33
  /// values of R).
  bool covers(const TRBox& box) const;

  /// Scales the stored F field: a fault-injection hook for verification tests.
  SphericalChart with_scaled_F(double factor) const;

  /// True when T increases strictly in t along every grid column.
  bool T_monotone_in_t() const;

  /// Chart metadata recorded with exports (labeling, branch notes).
  std::string metadata() const;

 private:
  SphericalChart(const SphChartParams& p, const Region& region);

  std::pair<double, double> t_span_at(double R) const;

  Branch branch_;
  ScaleFactor sf_;
  Labeling labeling_;
  double t_ref_ = 0.0;
  int sign_ = 1;
  Region region_;
  double tol_exc_;
  HermiteGrid T_;
  HermiteGrid F_;
};

}  // namespace flrwkit
