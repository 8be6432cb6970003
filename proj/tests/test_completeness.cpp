#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "killing3/completeness.hpp"
#include "killing3/geometry.hpp"

using namespace killing3;

namespace {

GeodesicState unit_state(const MetricSpec& s, Point p, double c, double a, double b) {
  GeodesicState st = frame_initial_state(s, p, c, a, b);
  st.velocity = (1.0 / std::sqrt(std::abs(st.speed))) * st.velocity;
  return st;
}

}  // namespace

TEST(Profile, CatalogVerdicts) {
  const CurvatureProfile hyp = curvature_profile(catalog("hyperbolic"), 20.0, 40, 8);
  EXPECT_NEAR(hyp.tail_estimate, -2.0, 1e-10);
  EXPECT_EQ(completeness_verdict(hyp), CompletenessVerdict::CompleteCriterion);
  const CurvatureProfile flat = curvature_profile(catalog("flat"), 20.0, 40, 8);
  EXPECT_NEAR(flat.tail_estimate, 0.0, 1e-14);
  EXPECT_EQ(completeness_verdict(flat), CompletenessVerdict::CompleteCriterion);
  const CurvatureProfile hopf = curvature_profile(catalog("hopf"), 1.5, 30, 8, 0.05);
  EXPECT_NEAR(hopf.tail_estimate, 8.0, 1e-10);
  EXPECT_EQ(completeness_verdict(hopf), CompletenessVerdict::IncompleteCriterion);
}

TEST(Profile, SyntheticProfiles) {
  std::vector<double> r, ones, decaying;
  for (int i = 0; i < 50; ++i) {
    r.push_back(i);
    ones.push_back(1.0);
    decaying.push_back(1.0 / (1.0 + i));
  }
  EXPECT_EQ(completeness_verdict(profile_from_samples(r, ones)), CompletenessVerdict::IncompleteCriterion);
  // Still falling across the last quartile: the window cannot decide.
  EXPECT_EQ(completeness_verdict(profile_from_samples(r, decaying)), CompletenessVerdict::Inconclusive);
  std::vector<double> wobble;
  for (int i = 0; i < 50; ++i) wobble.push_back(0.5 + 0.6 * (i % 2));
  const CurvatureProfile w = profile_from_samples(r, wobble);
  EXPECT_DOUBLE_EQ(w.tail_estimate, 0.5);
  EXPECT_NEAR(w.tail_spread, 0.6, 1e-15);
  EXPECT_EQ(completeness_verdict(w), CompletenessVerdict::Inconclusive);
  const CurvatureProfile p = profile_from_samples({0, 1, 2}, {-1.0, 3.0, 2.0});
  EXPECT_EQ(p.inf_values, (std::vector<double>{-1.0, 2.0, 2.0}));
  EXPECT_THROW(profile_from_samples({}, {}), Error);
  EXPECT_THROW(completeness_verdict(CurvatureProfile{}), Error);
}

TEST(Geodesic, ConservationOnHyperbolicAndHopf) {
  for (const auto& [s, p] : std::vector<std::pair<MetricSpec, Point>>{{catalog("hyperbolic"), {0.5, 0.2}},
                                                                      {catalog("hopf"), {0.5, 0.2}}}) {
    const GeodesicResult r = integrate_geodesic(s, unit_state(s, p, 0.6, 0.8, 0.0), 100.0);
    EXPECT_LT(r.c_drift_max, 1e-8) << s.name;
    EXPECT_LT(r.speed_drift_max, 1e-8) << s.name;
    EXPECT_LT(r.projection_residual, 1e-6) << s.name;
    EXPECT_NEAR(r.samples.back().s, 100.0, 1e-12);
  }
}

TEST(Geodesic, HopfEquatorPeriod) {
  const MetricSpec s = catalog("hopf");
  const Point p{std::numbers::pi / 4, 0.0};
  const GeodesicResult r = integrate_geodesic(s, unit_state(s, p, 0.0, 1.0, 0.0), std::numbers::pi);
  const GeodesicSample& end = r.samples.back();
  EXPECT_NEAR(end.state.r, p.r, 1e-9);
  EXPECT_NEAR(end.state.theta, 2 * std::numbers::pi, 1e-9);
}

TEST(Geodesic, LorentzianTimelike) {
  MetricSpec s = catalog("nil");
  s.signature = Signature::Lorentzian;
  const GeodesicState st = unit_state(s, {1.0, 0.3}, std::sqrt(1.0 + 0.25 + 0.36), 0.5, 0.6);
  EXPECT_LT(st.speed, 0.0);
  const GeodesicResult r = integrate_geodesic(s, st, 50.0);
  EXPECT_LT(r.c_drift_max, 1e-8);
  EXPECT_LT(r.speed_drift_max, 1e-8);
  EXPECT_LT(r.projection_residual, 1e-6);
}

TEST(Geodesic, HyperbolicLongRun) {
  const MetricSpec s = catalog("hyperbolic");
  const GeodesicResult r = integrate_geodesic(s, unit_state(s, {0.0, 0.0}, 0.995, 0.0, 0.0998749), 1000.0);
  EXPECT_NEAR(r.samples.back().s, 1000.0, 1e-9);
}

TEST(Geodesic, LeavingTheDomainIsBlowUp) {
  const MetricSpec s = catalog("hopf");
  try {
    integrate_geodesic(s, unit_state(s, {0.5, 0.0}, 0.0, 0.0, -1.0), 10.0);
    FAIL() << "radial geodesic must reach the axis";
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BlowUp);
  }
}

TEST(Geodesic, RejectsNonUnitStart) {
  const MetricSpec s = catalog("flat");
  GeodesicState st = frame_initial_state(s, {1.0, 0.0}, 2.0, 0.0, 0.0);
  EXPECT_THROW(integrate_geodesic(s, st, 1.0), Error);
  EXPECT_THROW(integrate_geodesic(s, unit_state(s, {1, 0}, 1, 0, 0), -1.0), Error);
}

TEST(Geodesic, TrajectoryCsv) {
  const MetricSpec s = catalog("flat");
  const GeodesicResult r = integrate_geodesic(s, unit_state(s, {1.0, 0.0}, 0.6, 0.0, 0.8), 2.0);
  std::istringstream in(trajectory_csv(r));
  std::string header, row;
  std::getline(in, header);
  EXPECT_EQ(header, "s,t,r,theta,vt,vr,vtheta,c_drift,speed_drift");
  std::size_t rows = 0;
  while (std::getline(in, row)) ++rows;
  EXPECT_EQ(rows, r.samples.size());
}
