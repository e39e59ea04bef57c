#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "flrwkit/catalog.hpp"
#include "flrwkit/probe.hpp"

using namespace flrwkit;

namespace {

constexpr double kPi = std::numbers::pi;

SpacetimeSpec spec(int K, const char* a, double lo = 0.0, double hi = kInf) {
  return SpacetimeSpec{K, 3, ScaleFactor::from_text(a, lo, hi)};
}

CurveSpec constant_R(double R0, double theta = kPi / 3) {
  CurveSpec c;
  c.kind = CurveKind::constant_R;
  c.R0 = R0;
  c.theta = theta;
  return c;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::config;  // sentinel: nothing thrown
}

// Catalog entries that admit a symmetric chart (flat or hyperbolic slices).
std::vector<CatalogEntry> chartable_catalog() {
  std::vector<CatalogEntry> out;
  for (const auto& name : catalog_names()) {
    CatalogEntry e = catalog_get(name);
    if (e.spec.K != 1) out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

TEST(Probe, RadiationConstantRadiusDegenerates) {
  const ProbeResult p = probe(spec(0, "t^(1/2)"), constant_R(1.0));
  EXPECT_EQ(p.G.kind, LimitKind::zero);
  EXPECT_EQ(p.C.kind, LimitKind::zero);
  EXPECT_EQ(p.r2ap2.kind, LimitKind::plus_infinity);
  EXPECT_EQ(p.r.kind, LimitKind::plus_infinity);
  ASSERT_EQ(p.R.kind, LimitKind::finite);
  EXPECT_NEAR(p.R.value, 1.0, 1e-12);
  // G approaches zero through negative values, matching 1/(1 - 1/(4 t^2)).
  for (const auto& s : p.trace) {
    EXPECT_NEAR(s.r, 1 / std::sqrt(s.t), 1e-12 / std::sqrt(s.t));
    EXPECT_NEAR(s.G, 1.0 / (1.0 - 1.0 / (4 * s.t * s.t)), 1e-9 * (1 + std::abs(s.G)));
    EXPECT_NEAR(s.r2ap2, 1.0 / (4 * s.t * s.t), 1e-9 / (4 * s.t * s.t));
    if (s.t < 0.4) {
      EXPECT_LT(s.G, 0.0);
    }
  }
}

TEST(Probe, ConstantRadiusLocusIsEventuallyNotTimelike) {
  // a^2 r'^2 = 1/(4 t^2) exceeds 1 below t = 1/2.
  const ProbeResult p = probe(spec(0, "t^(1/2)"), constant_R(1.0));
  EXPECT_LT(p.timelike_fraction, 0.05);
  for (const auto& s : p.trace)
    if (s.t < 0.45) {
      EXPECT_GT(s.tangent_norm, 0.0) << s.t;
    }
}

TEST(Probe, NearNullIngoingCurvesAreTimelike) {
  CurveSpec c;
  c.kind = CurveKind::near_null_ingoing;
  c.kappa = 0.5;
  c.r1 = 1.0;
  c.t1 = 1.0;
  const ProbeResult p = probe(spec(0, "t^(1/2)"), c);
  EXPECT_DOUBLE_EQ(p.timelike_fraction, 1.0);
  for (const auto& s : p.trace) EXPECT_NEAR(s.tangent_norm, -0.75, 1e-12);
  // With a particle horizon r stays bounded (r1 + 2 kappa) and R = r a -> 0.
  ASSERT_EQ(p.r.kind, LimitKind::finite);
  EXPECT_NEAR(p.r.value, 2.0, 1e-5);
  EXPECT_EQ(p.R.kind, LimitKind::zero);
}

TEST(Probe, MilneHasNoDegeneracy) {
  const ProbeResult p = probe(spec(-1, "t"), constant_R(1.0));
  ASSERT_EQ(p.G.kind, LimitKind::finite);
  EXPECT_NEAR(p.G.value, 1.0, 1e-12);
  for (const auto& s : p.trace) EXPECT_NEAR(s.G, 1.0, 1e-12);
}

TEST(Probe, CustomCurveLeavingTheRadiusRangeIsAnError) {
  CurveSpec c;
  c.kind = CurveKind::custom;
  c.r_of_t = "t - 0.5";
  EXPECT_EQ(code_of([&] { probe(spec(0, "t^(1/2)"), c); }), ErrorCode::curve_leaves_interval);
}

TEST(Probe, AxisAngleIsRejected) {
  EXPECT_EQ(code_of([] { probe(spec(0, "t^(1/2)"), constant_R(1.0, 0.0)); }), ErrorCode::degenerate_theta_fixed);
  EXPECT_EQ(code_of([] { probe(spec(0, "t^(1/2)"), constant_R(1.0, kPi)); }), ErrorCode::degenerate_theta_fixed);
}

TEST(Probe, SphericalSlicesHaveNoChart) {
  EXPECT_THROW(probe(spec(1, "t"), constant_R(1.0)), Error);
}

// ---- witnesses --------------------------------------------------------------

TEST(Witness, RadiationMatchesClosedForm) {
  const double eps = 1e-2;
  const WitnessResult w = witness_degeneracy(spec(0, "t^(1/2)"), 1.0, kPi / 3, eps);
  ASSERT_TRUE(w.found);
  EXPECT_TRUE(w.hypotheses_established);
  // theta = pi/3: C = 4G/(G + 3); with G = -g the bound |C| = eps binds first,
  // at g = 3 eps/(4 + eps), and g = 1/(1/(4t^2) - 1).
  const double g = 3 * eps / (4 + eps);
  const double want = 1.0 / (2.0 * std::sqrt(1.0 + 1.0 / g));
  EXPECT_NEAR(w.t_star, want, 1e-9 * want);
  EXPECT_LE(w.t_star, 0.0498);
  EXPECT_LE(std::abs(w.G), eps);
  EXPECT_LE(std::abs(w.C), eps * (1 + 1e-9));
}

TEST(Witness, MatterIsFound) {
  const WitnessResult w = witness_degeneracy(spec(0, "t^(2/3)"), 1.0, kPi / 3, 1e-2);
  EXPECT_TRUE(w.found);
  EXPECT_TRUE(w.hypotheses_established);
}

TEST(Witness, MilneHasNone) {
  const WitnessResult w = witness_degeneracy(spec(-1, "t"), 1.0, kPi / 3, 1e-2);
  EXPECT_FALSE(w.found);
  EXPECT_FALSE(w.hypotheses_established);
}

TEST(Witness, NoBigBangHasNoneAndIsTagged) {
  const WitnessResult w = witness_degeneracy(spec(0, "t + 1"), 1.0, kPi / 3, 1e-2);
  EXPECT_FALSE(w.found);
  EXPECT_FALSE(w.hypotheses_established);
  EXPECT_NE(w.note.find("hypotheses not established"), std::string::npos) << w.note;
}

// ---- properties ---------------------------------------------------------------

TEST(ProbeProperty, FiniteRadiusAtABigBangForcesInfiniteCoordinateRadius) {
  int checked = 0;
  for (const CatalogEntry& e : chartable_catalog()) {
    const LimitDiag la = limit_at_lower(e.spec.sf, Quantity::a);
    for (double R0 : {0.5, 1.0, 2.0}) {
      const ProbeResult p = probe(e.spec, constant_R(R0));
      if (p.R.kind == LimitKind::finite && p.R.value > 0 && la.kind == LimitKind::zero) {
        EXPECT_EQ(p.r.kind, LimitKind::plus_infinity) << e.name;
        ++checked;
      }
    }
  }
  EXPECT_GT(checked, 0);
}

TEST(ProbeProperty, FlatWithPositiveInitialSlopeDegenerates) {
  std::vector<SpacetimeSpec> specs;
  for (const CatalogEntry& e : chartable_catalog()) {
    if (e.spec.K != 0) continue;
    const LimitDiag lp = limit_at_lower(e.spec.sf, Quantity::a_prime);
    const bool positive = lp.kind == LimitKind::plus_infinity || (lp.kind == LimitKind::finite && lp.value > 0);
    if (positive && std::isfinite(e.spec.sf.t_inf())) specs.push_back(e.spec);
  }
  for (double p : {0.3, 0.5, 0.75, 1.0}) specs.push_back(power_law(p).spec);
  specs.push_back(spec(0, "t + t^2"));
  ASSERT_GE(specs.size(), 5u);
  for (const SpacetimeSpec& s : specs) {
    const ProbeResult p = probe(s, constant_R(1.0));
    EXPECT_EQ(p.G.kind, LimitKind::zero) << s.sf.text();
    EXPECT_EQ(p.C.kind, LimitKind::zero) << s.sf.text();
    EXPECT_EQ(p.r2ap2.kind, LimitKind::plus_infinity) << s.sf.text();
  }
}

TEST(ProbeProperty, CIsBoundedByG) {
  for (const CatalogEntry& e : chartable_catalog()) {
    for (double theta : {0.3, kPi / 3, kPi / 2, 2.5}) {
      const ProbeResult p = probe(e.spec, constant_R(1.0, theta));
      const double s2 = std::sin(theta) * std::sin(theta);
      for (const auto& s : p.trace)
        if (std::abs(s.G) <= s2 / 2) {
          EXPECT_LE(std::abs(s.C), 2 * std::abs(s.G) / s2 * (1 + 1e-12)) << e.name;
        }
    }
  }
}

TEST(ProbeProperty, ScheduleRatioDoesNotChangeClassifications) {
  Thresholds third;
  third.q = 1.0 / 3.0;
  for (const CatalogEntry& e : chartable_catalog()) {
    const ProbeResult a = probe(e.spec, constant_R(1.0));
    const ProbeResult b = probe(e.spec, constant_R(1.0), third);
    EXPECT_EQ(a.R.kind, b.R.kind) << e.name;
    EXPECT_EQ(a.r.kind, b.r.kind) << e.name;
    EXPECT_EQ(a.G.kind, b.G.kind) << e.name;
    EXPECT_EQ(a.C.kind, b.C.kind) << e.name;
    EXPECT_EQ(a.r2ap2.kind, b.r2ap2.kind) << e.name;
  }
}
