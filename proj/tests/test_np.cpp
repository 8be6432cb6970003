#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "killing3/geometry.hpp"
#include "killing3/np.hpp"
#include "support.hpp"

using namespace killing3;
using testing_support::catalog_cases;
using testing_support::seeded_points;

namespace {

// Unit field (1, 0, eps r) / |.| in the flat metric, and its analogue normalized in any metric.
VectorField perturbed_field(const MetricSpec& spec, double eps) {
  return [spec, eps](double r, double theta, int order) {
    const Jet R = Jet::variable_r(r, order);
    VecJet v{Jet(1.0, order), Jet(0.0, order), eps * R};
    const Geometry geo(metric_jets(spec, {r, theta}, order));
    return scaled(1.0 / sqrt(geo.inner(v, v)), v);
  };
}

ScalarField seeded_angle(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), c = u(rng);
  return ScalarField::analytic([a, b, c](const Jet& r, const Jet& t) { return a * r * r + b * sin(t) + c * r * t; });
}

}  // namespace

TEST(Spin, HopfCoefficients) {
  const SpinCoefficients s = spin_coefficients(catalog("hopf"), {std::numbers::pi / 4, 0.0});
  EXPECT_NEAR(std::abs(s.kappa), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.sigma), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.rho - Complex(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.epsilon - Complex(0, -1)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.beta), 0.0, 1e-14);
}

TEST(Spin, HyperbolicBeta) {
  const SpinCoefficients s = spin_coefficients(catalog("hyperbolic"), {1.0, 0.0});
  // beta = -i tanh(r) / sqrt(2)
  EXPECT_NEAR(s.beta.real(), 0.0, 1e-14);
  EXPECT_NEAR(s.beta.imag(), -std::tanh(1.0) / std::sqrt(2.0), 1e-14);
}

TEST(Kinematics, TwistAgreesWithBracket) {
  for (const auto& c : catalog_cases())
    for (const Point& p : seeded_points(c, 10)) {
      const KinematicData k = kinematics(c.spec, p);
      EXPECT_NEAR(k.omega, k.omega_bracket, 1e-12) << c.label;
      EXPECT_LT(k.reassembly_residual(), 1e-12) << c.label;
    }
  EXPECT_NEAR(kinematics(catalog("hopf", {{"R", 2.0}}), {0.5, 0.5}).omega, 1.0, 1e-12);
}

TEST(Structure, IdentitiesOnCatalogs) {
  for (const auto& c : catalog_cases())
    for (const Point& p : seeded_points(c, 20)) EXPECT_LT(structure_residuals(c.spec, p).max_all(), 1e-8) << c.label;
}

TEST(Structure, FrameIdentitiesHoldForAnyUnitField) {
  const MetricSpec s = testing_support::generic_metric();
  const Point p{0.7, 0.4};
  EXPECT_LT(structure_residuals(s, p).max_all(), 1e-10);
  const FieldJets fj = field_jets(s, p, 3);
  const Geometry geo(metric_jets(fj, s.signature, p));
  const FrameJets cf = canonical_frame_jets(fj);
  const Jet r = Jet::variable_r(p.r, 3), t = Jet::variable_theta(p.theta, 3);
  VecJet v = cf.T + scaled(0.3 * sin(t) * r, cf.X) + scaled(0.2 * r * r, cf.Y);
  v = scaled(1.0 / sqrt(geo.inner(v, v)), v);
  const StructureResiduals sr = structure_residuals(geo, adapted_frame(geo, v, cf));
  EXPECT_LT(sr.max_structure(), 1e-10);
  // The identities specific to Killing fields must fail here.
  EXPECT_GT(sr.max_killing(), 1e-3);
}

TEST(Killing, CatalogFieldsPass) {
  for (const auto& c : catalog_cases()) {
    const KillingReport r = killing_test(c.spec, seeded_points(c, 20));
    EXPECT_LT(r.max_geodesic, 1e-9) << c.label;
    EXPECT_LT(r.max_div, 1e-9) << c.label;
    EXPECT_LT(r.max_shear, 1e-9) << c.label;
    EXPECT_LT(r.max_lie, 1e-9) << c.label;
    EXPECT_TRUE(r.consistent(1e-9));
  }
}

TEST(Killing, PerturbedFieldFails) {
  const MetricSpec flat = catalog("flat");
  const KillingReport r = killing_test(flat, perturbed_field(flat, 0.01), {{1.0, 0.0}, {2.0, 1.0}, {3.0, 0.5}});
  EXPECT_GT(r.max_kinematic(), 1e-4);
  EXPECT_GT(r.max_lie, 1e-4);
  EXPECT_NEAR(r.max_shear, 0.005, 1e-4);
  EXPECT_TRUE(r.consistent(1e-6));
}

TEST(Killing, NonUnitFieldRejected) {
  VectorField v = [](double, double, int order) { return VecJet{Jet(2.0, order), Jet(0.0, order), Jet(0.0, order)}; };
  try {
    killing_test(catalog("flat"), v, {{1.0, 0.0}});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotUnitLength);
  }
}

TEST(Gauge, RotationLaws) {
  for (const char* name : {"hopf", "nil", "hyperbolic"})
    for (unsigned seed : {1u, 2u, 3u}) {
      const RotationCheck c = rotate_frame(catalog(name), {0.6, 0.8}, seeded_angle(seed));
      EXPECT_LT(c.max_residual(), 1e-12) << name;
    }
  // Non-trivial kappa and sigma: rotate the frame adapted to the generic metric.
  const RotationCheck g = rotate_frame(testing_support::generic_metric(), {0.7, 0.4}, seeded_angle(9));
  EXPECT_LT(g.max_residual(), 1e-12);
  EXPECT_GT(std::abs(g.base.beta), 1e-3);
}

TEST(Conformal, RescalingLaws) {
  for (const char* name : {"hopf", "hyperbolic"}) {
    const MetricSpec s = catalog(name);
    const VectorField v = perturbed_field(s, 0.3);
    for (unsigned seed : {1u, 2u, 3u}) {
      const ScalarField f = seeded_angle(seed);
      const ConformalCheck t = conformal_rescale_check(s, f, {0.6, 0.8});
      EXPECT_LT(t.omega_residual, 1e-12) << name;
      if (t.omega != 0.0)
        EXPECT_NEAR(t.omega_ratio, t.scale, 1e-12);
      else
        EXPECT_TRUE(std::isnan(t.omega_ratio));
      const ConformalCheck q = conformal_rescale_check(s, f, {0.6, 0.8}, &v);
      EXPECT_GT(std::abs(q.sigma), 1e-3);
      EXPECT_LT(q.sigma_residual, 1e-12) << name;
      EXPECT_LT(q.omega_residual, 1e-12) << name;
    }
  }
}
