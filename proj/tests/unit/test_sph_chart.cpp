#include <gtest/gtest.h>

#include <cmath>
#include <memory>

#include "flrwkit/errors.hpp"
#include "flrwkit/sph_chart.hpp"
#include "test_support.hpp"

using namespace flrwkit;

namespace {

ScaleFactor sf(const char* a, double lo = 0.0, double hi = kInf) { return ScaleFactor::from_text(a, lo, hi); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::config;  // sentinel: nothing thrown
}

SphericalChart build(Branch b, const ScaleFactor& s, Region region, Labeling labeling = Labeling::axis,
                     std::optional<double> t_ref = {}) {
  const SphChartParams p{
      .branch = b, .sf = s, .labeling = labeling, .t_ref = t_ref, .tol_exc = kTolExc, .ode_rel_tol = 1e-12};
  return SphericalChart::build(p, region, GridDims{});
}

SphericalChart build(Branch b, const char* a, Region region, Labeling labeling = Labeling::axis,
                     std::optional<double> t_ref = {}) {
  return build(b, sf(a), region, labeling, t_ref);
}

// Closed-form oracles for the test's own pushforward check.
struct Geometry {
  std::function<double(double)> a, ap;
  Branch branch;
  double R(double t, double r) const { return branch == Branch::flat ? r * a(t) : a(t) * std::sinh(r); }
  double R_t(double t, double r) const { return branch == Branch::flat ? r * ap(t) : ap(t) * std::sinh(r); }
  double R_r(double t, double r) const { return branch == Branch::flat ? a(t) : a(t) * std::cosh(r); }
};

// Max normalized residual of -F dT^2 + G dR^2 against -dt^2 + a^2 dr^2, with
// T partials from central differences of the interpolated field.
double pushforward_residual(const SphericalChart& c, const Geometry& g, int samples, std::uint64_t seed) {
  testsupport::Rng rng(seed);
  const Region& reg = c.region();
  const double h = 1e-5;
  double worst = 0.0;
  for (int k = 0; k < samples; ++k) {
    const double t = rng.uniform(reg.t_min + 2 * h, reg.t_max - 2 * h);
    const double r = rng.uniform(reg.r_min + 2 * h, reg.r_max - 2 * h);
    const double Tt = testsupport::central_diff([&](double x) { return c.T(x, r); }, t, h);
    const double Tr = testsupport::central_diff([&](double x) { return c.T(t, x); }, r, h);
    const double F = c.F(t, r), G = c.G(t, r);
    const double Rt = g.R_t(t, r), Rr = g.R_r(t, r);
    const double s2 = g.a(t) * g.a(t);
    const double scale = std::max(1.0, s2);
    worst = std::max(worst, std::abs(-F * Tt * Tt + G * Rt * Rt + 1.0) / scale);
    worst = std::max(worst, std::abs(-F * Tr * Tr + G * Rr * Rr - s2) / scale);
    worst = std::max(worst, std::abs(-F * Tt * Tr + G * Rt * Rr) / scale);
  }
  return worst;
}

const Geometry kMilne{[](double t) { return t; }, [](double) { return 1.0; }, Branch::hyperbolic};
const Geometry kDeSitter{[](double t) { return std::exp(t); }, [](double t) { return std::exp(t); }, Branch::flat};

}  // namespace

// ---- closed-form coefficients ---------------------------------------------

TEST(AreaRadius, Examples) {
  EXPECT_DOUBLE_EQ(R_of(Branch::flat, sf("t^(1/2)"), 0.25, 2.0), 1.0);
  EXPECT_DOUBLE_EQ(R_of(Branch::hyperbolic, sf("t"), 1.0, 0.0), 0.0);
  EXPECT_DOUBLE_EQ(R_of(Branch::flat, sf("exp(t)", -kInf, kInf), 0.0, 3.0), 3.0);
  EXPECT_DOUBLE_EQ(R_of(Branch::hyperbolic, sf("t"), 2.0, 1.0), 2.0 * std::sinh(1.0));
}

TEST(AreaRadius, PartialsMatchFiniteDifferences) {
  const ScaleFactor s = sf("t + t^2");
  for (Branch b : {Branch::flat, Branch::hyperbolic}) {
    const auto [Rt, Rr] = R_partials(b, s, 0.7, 0.4);
    EXPECT_NEAR(Rt, testsupport::central_diff([&](double t) { return R_of(b, s, t, 0.4); }, 0.7, 1e-5), 1e-9);
    EXPECT_NEAR(Rr, testsupport::central_diff([&](double r) { return R_of(b, s, 0.7, r); }, 0.4, 1e-5), 1e-9);
  }
}

TEST(RadialScale, IsTheScaleFactorOnBothBranches) {
  EXPECT_DOUBLE_EQ(radial_scale(Branch::flat, sf("t^2"), 3.0), 9.0);
  EXPECT_DOUBLE_EQ(radial_scale(Branch::hyperbolic, sf("t^2"), 3.0), 9.0);
}

TEST(Branch, SphericalSlicesHaveNoChart) {
  EXPECT_EQ(branch_for_curvature(0), Branch::flat);
  EXPECT_EQ(branch_for_curvature(-1), Branch::hyperbolic);
  EXPECT_THROW(branch_for_curvature(1), Error);
}

TEST(MetricCoefficientG, MilneIsIdenticallyOne) {
  testsupport::Rng rng(1);
  const ScaleFactor s = sf("t");
  for (int k = 0; k < 200; ++k) {
    const double t = rng.uniform(0.1, 5.0), r = rng.uniform(0.0, 3.0);
    EXPECT_NEAR(G_of(Branch::hyperbolic, s, t, r), 1.0, 1e-12);
  }
}

TEST(MetricCoefficientG, FlatExponentialIsStaticDeSitter) {
  const ScaleFactor s = sf("exp(t)", -kInf, kInf);
  for (double t : {-1.0, 0.0, 0.5})
    for (double r : {0.1, 0.3, 0.5}) {
      const double R = r * std::exp(t);
      if (R >= 0.95) continue;
      EXPECT_NEAR(G_of(Branch::flat, s, t, r), 1.0 / (1.0 - R * R), 1e-13 / (1.0 - R * R));
    }
}

TEST(MetricCoefficientG, TendsToOneOnTheAxis) {
  EXPECT_NEAR(G_of(Branch::flat, sf("t^(1/2)"), 0.3, 1e-9), 1.0, 1e-15);
}

TEST(MetricCoefficientG, ThrowsOnTheDegenerateSet) {
  EXPECT_EQ(code_of([] { G_of(Branch::flat, sf("t"), 0.5, 1.0); }), ErrorCode::degenerate_point);
}

TEST(ExcludedSet, Examples) {
  const ScaleFactor s = sf("t");
  const auto deg = excluded_set(Branch::flat, s, 0.5, 1.0);
  ASSERT_TRUE(deg.has_value());
  EXPECT_EQ(deg->kind, ExcludedKind::degenerate_jacobian);
  EXPECT_FALSE(excluded_set(Branch::flat, s, 0.5, 0.5).has_value());
  const auto axis = excluded_set(Branch::hyperbolic, s, 0.5, 0.0);
  ASSERT_TRUE(axis.has_value());
  EXPECT_EQ(axis->kind, ExcludedKind::axis);
  const auto out = excluded_set(Branch::flat, s, -1.0, 0.5);
  ASSERT_TRUE(out.has_value());
  EXPECT_EQ(out->kind, ExcludedKind::outside_interval);
}

TEST(ExcludedSet, DegenerateIffWithinTolerance) {
  // a = t, flat: denominator 1 - r^2.
  const ScaleFactor s = sf("t");
  EXPECT_TRUE(excluded_set(Branch::flat, s, 0.5, 1.0 + 4e-10).has_value());
  EXPECT_FALSE(excluded_set(Branch::flat, s, 0.5, 1.0 + 1e-8).has_value());
}

TEST(MetricCoefficientGProperty, MatchesIndependentDualDerivative) {
  testsupport::Rng rng(2);
  for (const char* a : {"t^(1/2)", "t^(2/3)", "t + t^2", "sinh(t)", "exp(t) * t"}) {
    const Expr e = parse(a);
    const ScaleFactor s = sf(a);
    for (int k = 0; k < 100; ++k) {
      const double t = rng.uniform(0.2, 2.0);
      const double ap = eval_dual(e, t).deriv;
      const double r = rng.uniform(0.0, 0.9 / std::abs(ap));
      const double want = 1.0 / (1.0 - r * r * ap * ap);
      EXPECT_NEAR(G_of(Branch::flat, s, t, r), want, 4e-16 * std::abs(want) * (1 + std::abs(want))) << a;
    }
  }
}

TEST(MetricCoefficientGProperty, HyperbolicSecondForm) {
  testsupport::Rng rng(3);
  for (const char* a : {"t", "t^(1/2)", "t + t^2", "sinh(t)", "2 * t^(3/2)"}) {
    const ScaleFactor s = sf(a);
    for (int k = 0; k < 100; ++k) {
      const double t = rng.uniform(0.2, 2.0), r = rng.uniform(0.01, 1.0);
      double G;
      try {
        G = G_of(Branch::hyperbolic, s, t, r);
      } catch (const Error&) {
        continue;  // on the degenerate set
      }
      const double av = s.a(t), ap = s.a_dual(t).deriv, R = av * std::sinh(r);
      const double want = av * av / (R * R * (1 - ap * ap) + av * av);
      EXPECT_NEAR(G, want, 1e-12 * std::abs(want)) << a << " t=" << t << " r=" << r;
    }
  }
}

// ---- built charts -----------------------------------------------------------

class BuiltCharts : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    milne = std::make_unique<SphericalChart>(build(Branch::hyperbolic, "t", {1.0, 3.0, 0.2, 1.2}));
    desitter = std::make_unique<SphericalChart>(
        build(Branch::flat, sf("exp(t)", -kInf, kInf), {0.0, 1.0, 0.05, 0.33}));
  }
  static void TearDownTestSuite() {
    milne.reset();
    desitter.reset();
  }
  static std::unique_ptr<SphericalChart> milne, desitter;
};

std::unique_ptr<SphericalChart> BuiltCharts::milne;
std::unique_ptr<SphericalChart> BuiltCharts::desitter;

TEST_F(BuiltCharts, MilneIsTheMinkowskiChart) {
  testsupport::Rng rng(4);
  for (int k = 0; k < 500; ++k) {
    const double t = rng.uniform(1.0, 3.0), r = rng.uniform(0.2, 1.2);
    EXPECT_NEAR(milne->T(t, r), t * std::cosh(r), 1e-8);
    EXPECT_NEAR(milne->F(t, r), 1.0, 1e-6);
    EXPECT_NEAR(milne->G(t, r), 1.0, 1e-12);
    EXPECT_NEAR(milne->R(t, r), t * std::sinh(r), 1e-14);
  }
}

TEST_F(BuiltCharts, DeSitterIsTheStaticPatch) {
  testsupport::Rng rng(5);
  for (int k = 0; k < 500; ++k) {
    const double t = rng.uniform(0.0, 1.0), r = rng.uniform(0.05, 0.33);
    const double R = r * std::exp(t);
    EXPECT_NEAR(desitter->T(t, r), t - 0.5 * std::log(1 - R * R), 1e-8);
    EXPECT_NEAR(desitter->F(t, r), 1 - R * R, 1e-6);
  }
}

TEST_F(BuiltCharts, PushforwardReproducesTheFlrwMetric) {
  EXPECT_LE(pushforward_residual(*milne, kMilne, 200, 6), 1e-5);
  EXPECT_LE(pushforward_residual(*desitter, kDeSitter, 200, 7), 1e-5);
}

TEST_F(BuiltCharts, TIncreasesWithTime) {
  EXPECT_TRUE(milne->T_monotone_in_t());
  EXPECT_TRUE(desitter->T_monotone_in_t());
  EXPECT_EQ(milne->sign(), 1);
  testsupport::Rng rng(8);
  for (int k = 0; k < 100; ++k) {
    const double t = rng.uniform(1.0, 2.9), r = rng.uniform(0.2, 1.2);
    EXPECT_LT(milne->T(t, r), milne->T(t + 0.05, r));
  }
}

TEST_F(BuiltCharts, InverseMapRoundTrips) {
  testsupport::Rng rng(9);
  for (int k = 0; k < 100; ++k) {
    const double t = rng.uniform(1.05, 2.95), r = rng.uniform(0.25, 1.15);
    const auto [t2, r2] = milne->locate(milne->T(t, r), milne->R(t, r));
    EXPECT_NEAR(t2, t, 1e-9);
    EXPECT_NEAR(r2, r, 1e-9);
  }
  EXPECT_EQ(code_of([&] { milne->locate(100.0, 1.0); }), ErrorCode::sample_outside_region);
}

TEST_F(BuiltCharts, SafeBoxIsCoveredAndCentred) {
  const TRBox box = milne->safe_box();
  EXPECT_TRUE(milne->covers(box));
  EXPECT_LT(box.T_min, box.T_max);
  const TRBox centred = milne->safe_box(1.0);
  EXPECT_TRUE(milne->covers(centred));
  EXPECT_NEAR(0.5 * (centred.R_min + centred.R_max), 1.0, 1e-12);
  EXPECT_FALSE(milne->covers(TRBox{0.0, 10.0, 0.1, 5.0}));
}

TEST_F(BuiltCharts, QueriesOutsideTheRegionAreErrors) {
  EXPECT_EQ(code_of([&] { milne->T(0.5, 0.5); }), ErrorCode::sample_outside_region);
  EXPECT_EQ(code_of([&] { milne->F(2.0, 2.0); }), ErrorCode::sample_outside_region);
}

TEST_F(BuiltCharts, MetadataRecordsLabelingAndAreaRadius) {
  EXPECT_NE(milne->metadata().find("labeling=axis"), std::string::npos);
  EXPECT_NE(milne->metadata().find("sinh"), std::string::npos);
}

TEST(SphericalChartBuild, RegionCrossingTheDegenerateSetIsRejected) {
  EXPECT_EQ(code_of([] { build(Branch::flat, "t", {0.5, 1.0, 0.5, 1.5}); }),
            ErrorCode::region_crosses_degenerate_set);
}

TEST(SphericalChartBuild, SliceLabelingFollowsLevelCurvesToTheReferenceSlice) {
  // Milne level curves t cosh r = c meet t = t_ref at r = acosh(c / t_ref).
  const double t_ref = 0.5;
  const SphericalChart c = build(Branch::hyperbolic, "t", {1.0, 2.0, 0.3, 1.0}, Labeling::slice, t_ref);
  EXPECT_EQ(c.labeling(), Labeling::slice);
  EXPECT_EQ(c.sign(), 1);
  testsupport::Rng rng(10);
  for (int k = 0; k < 200; ++k) {
    const double t = rng.uniform(1.0, 2.0), r = rng.uniform(0.3, 1.0);
    EXPECT_NEAR(c.T(t, r), std::acosh(t * std::cosh(r) / t_ref), 1e-8);
  }
  EXPECT_LE(pushforward_residual(c, kMilne, 100, 11), 1e-5);
}

TEST(SphericalChartBuild, SliceOutsideTheIntervalIsRejected) {
  EXPECT_EQ(code_of([] { build(Branch::hyperbolic, "t", {1.0, 2.0, 0.3, 1.0}, Labeling::slice, -1.0); }),
            ErrorCode::domain);
}

TEST(SphericalChartBuild, ScaledFIsAFaultInjection) {
  const SphericalChart c = build(Branch::hyperbolic, "t", {1.0, 2.0, 0.3, 1.0});
  const SphericalChart bad = c.with_scaled_F(1.01);
  EXPECT_NEAR(bad.F(1.5, 0.5), 1.01 * c.F(1.5, 0.5), 1e-12);
  EXPECT_GT(pushforward_residual(bad, kMilne, 50, 12), 1e-3);
}
