#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "killing3/conformal_family.hpp"
#include "killing3/curvature.hpp"
#include "oracles.hpp"

using namespace killing3;

namespace {

// Period of w'' = -w (w^2 + 2B) / 2 at energy E, from the quadrature of dr = dw / sqrt(E - V(w)).
double quadrature_period(double B, double E) {
  auto V = [B](double w) { return 0.25 * (w * w + 2 * B) * (w * w + 2 * B); };
  // Outer turning point: V(w) = E with w^2 = -2B + 2 sqrt(E).
  const double w_hi = std::sqrt(-2 * B + 2 * std::sqrt(E));
  const double inner = -2 * B - 2 * std::sqrt(E);
  const double w_lo = inner > 0 ? std::sqrt(inner) : -w_hi;
  const double mid = 0.5 * (w_hi + w_lo), half = 0.5 * (w_hi - w_lo);
  // w = mid + half sin(u) removes the endpoint singularities.
  auto integrand = [&](double u) {
    const double w = mid + half * std::sin(u);
    const double gap = E - V(w);
    return gap <= 0 ? 0.0 : half * std::cos(u) / std::sqrt(gap);
  };
  return 2.0 * oracle::integrate(integrand, -std::numbers::pi / 2, std::numbers::pi / 2, 400);
}

}  // namespace

TEST(Family, EnergyConservedOverTenPeriods) {
  FamilyParams p;
  const OmegaSolution sol = solve_omega_ode(p);
  ASSERT_TRUE(sol.period.has_value());
  EXPECT_GE((sol.r_hi() - sol.r_lo()) / *sol.period, 10.0);
  EXPECT_LT(sol.energy_drift, 1e-8);
  for (const auto& s : sol.samples)
    EXPECT_NEAR(family_energy(0.0, s.omega, s.omega_r), family_energy(0.0, sol.samples[0].omega, sol.samples[0].omega_r),
                1e-8);
}

TEST(Family, PeriodMatchesQuadrature) {
  for (const auto& [B, C, w0] : std::vector<std::tuple<double, double, double>>{
           {0.0, 1.0, 0.0}, {-0.3, 2.0, 0.5}, {-1.0, -0.5, std::sqrt(2.0)}}) {
    FamilyParams p;
    p.B = B, p.C = C, p.omega0 = w0;
    const OmegaSolution sol = solve_omega_ode(p);
    ASSERT_TRUE(sol.period.has_value());
    const double E = family_energy(B, sol.samples[0].omega, sol.samples[0].omega_r);
    EXPECT_NEAR(*sol.period, quadrature_period(B, E), 1e-6 * *sol.period) << B << ' ' << C;
  }
}

TEST(Family, DoubleWellStaysConfined) {
  FamilyParams p;
  p.B = -1.0, p.C = -0.5, p.omega0 = std::sqrt(2.0);
  const OmegaSolution sol = solve_omega_ode(p);
  for (const auto& s : sol.samples) EXPECT_GT(s.omega, 0.0);
}

TEST(Family, DerivativesMatchOde) {
  const auto d = omega_derivatives(-0.4, 0.7, 0.2);
  EXPECT_NEAR(d[2], -0.5 * 0.7 * (0.49 - 0.8), 1e-15);
  const double h = 1e-5;
  // d/dr of w'' along the flow equals w'''.
  const auto a = omega_derivatives(-0.4, 0.7 + h * 0.2, 0.2 + h * d[2]);
  const auto b = omega_derivatives(-0.4, 0.7 - h * 0.2, 0.2 - h * d[2]);
  EXPECT_NEAR((a[2] - b[2]) / (2 * h), d[3], 1e-8);
  EXPECT_NEAR((a[3] - b[3]) / (2 * h), d[4], 1e-8);
}

TEST(Family, Admissibility) {
  EXPECT_TRUE(admissible(0.0, 1.0, 0.0));
  EXPECT_FALSE(admissible(1.0, -1.0, 0.0));
  FamilyParams p;
  p.B = 1.0, p.C = -1.0;
  try {
    solve_omega_ode(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InadmissibleParams);
  }
}

TEST(Family, BuiltMetricSolvesTheTwistEquation) {
  for (const auto& [B, C, w0] : std::vector<std::tuple<double, double, double>>{
           {0.0, 1.0, 0.0}, {-0.3, 2.0, 0.5}, {-1.0, -0.5, std::sqrt(2.0)}}) {
    FamilyParams p;
    p.B = B, p.C = C, p.omega0 = w0;
    const MetricSpec s = build_cf_metric(p);
    for (double r : {-0.2, 0.0, 0.15})
      for (double t : {0.0, 1.0}) {
        EXPECT_LT(wpde_residual(s, {r, t}, B, C), 1e-8);
        // S = 5 w^2 / 2 + 2B
        const double w = solve_omega_ode(p).at(r)[0];
        EXPECT_NEAR(curvature_scalars(s, {r, t}).S, 2.5 * w * w + 2 * B, 1e-8);
      }
  }
}

TEST(Family, RangeErrors) {
  FamilyParams p;
  const OmegaSolution sol = solve_omega_ode(p);
  const auto [lo, hi] = monotone_arc(sol, 1);
  EXPECT_LT(lo, 0.0);
  EXPECT_GT(hi, 0.0);
  p.r_min = lo - 1.0;
  p.r_max = hi;
  try {
    build_cf_metric(p);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PhiVanishes);
  }
  const MetricSpec s = catalog("cf_family");
  EXPECT_THROW(metric_components(s, {hi + 0.5, 0.0}), Error);
}

TEST(Family, EquilibriumHasNoArc) {
  // w0 = sqrt(2) with C = -1 sits at the bottom of the well: w stays constant, phi vanishes.
  FamilyParams p;
  p.B = -1.0, p.omega0 = std::sqrt(2.0), p.C = -1.0;
  if (!admissible(p.B, p.C, p.omega0)) GTEST_SKIP() << "equilibrium excluded by admissibility";
  const OmegaSolution sol = solve_omega_ode(p);
  EXPECT_TRUE(sol.equilibrium);
  EXPECT_THROW(build_cf_metric(p), Error);
}
