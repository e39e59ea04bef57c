#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "flrwkit/criteria.hpp"
#include "flrwkit/sph_chart.hpp"

namespace flrwkit {

enum class CurveKind { constant_R, near_null_ingoing, custom };
std::string_view to_string(CurveKind k);

/// Radial curve t -> (t, r(t)) approaching t_inf.
struct CurveSpec {
  CurveKind kind = CurveKind::constant_R;
  double R0 = 1.0;       // constant_R: r(t) = R0/a (flat) or asinh(R0/a) (hyperbolic)
  double kappa = 0.5;    // near_null_ingoing: r(t) = r1 + kappa int_t^{t1} ds/a
  double r1 = 1.0;
  double t1 = 1.0;
  std::string r_of_t;    // custom: expression in t
  double theta = 1.0471975511965976;  // fixed polar angle for C
};

struct ProbeSample {
  double t, r, R, G, C, r2ap2, tangent_norm;
};

struct ProbeResult {
  LimitDiag R, r, G, C, r2ap2;
  double timelike_fraction = 0.0;
  std::vector<ProbeSample> trace;
  std::vector<std::string> notes;
};

/// Samples the curve on the geometric schedule towards t_inf and classifies
/// the limits of R, r, G, C = G/(G cos^2 + sin^2) and r^2 a'^2. The tangent
/// norm -1 + a^2 r'^2 uses the exact slope r' of the curve.
/// Throws CurveLeavesInterval if the curve is undefined at a sample,
/// DegenerateThetaFixed if theta is on the axis.
ProbeResult probe(const SpacetimeSpec& spec, const CurveSpec& curve, const Thresholds& th = {});

struct WitnessResult {
  bool found = false;
  double t_star = 0.0;
  double G = 0.0;
  double C = 0.0;
  bool hypotheses_established = false;
  std::string note;
};

/// Searches the constant-R locus for t* with |G| <= eps and |C| <= eps: scans
/// the schedule for the first sample meeting both bounds, then bisects between
/// it and the previous sample for the latest such time.
WitnessResult witness_degeneracy(const SpacetimeSpec& spec, double R0, double theta, double eps,
                                 const Thresholds& th = {});

}  // namespace flrwkit
