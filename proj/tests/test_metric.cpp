#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "killing3/metric.hpp"
#include "killing3/np.hpp"
#include "support.hpp"

using namespace killing3;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::NonFinite;
}

}  // namespace

TEST(Metric, FlatIsIdentity) {
  const Sym3 g = metric_components(catalog("flat"), {1.0, 0.3});
  EXPECT_LT((g.to_mat() - Mat3::identity()).max_abs(), 1e-15);
}

TEST(Metric, HopfComponentsAtQuarterPi) {
  const MetricSpec s = catalog("hopf", {{"R", 1.0}});
  const Point p{std::numbers::pi / 4, 0.0};
  const Sym3 g = metric_components(s, p);
  EXPECT_NEAR(g(0, 0), 1.0, 1e-15);
  EXPECT_NEAR(g(0, 1), 0.0, 1e-15);
  EXPECT_NEAR(g(0, 2), 0.5, 1e-15);
  EXPECT_NEAR(g(1, 1), 1.0, 1e-15);
  EXPECT_NEAR(g(2, 2), 0.5, 1e-15);  // (phi h)^2 + phi^2 = 1/4 + 1/4
  const FrameAt f = canonical_frame(s, p);
  EXPECT_NEAR(f.X[0], -1.0, 1e-15);
  EXPECT_NEAR(f.X[2], 2.0, 1e-15);
  EXPECT_EQ(f.Y, (Vec3{{0, 1, 0}}));
}

TEST(Metric, NilComponents) {
  const Sym3 g = metric_components(catalog("nil", {{"omega0", 1.0}}), {2.0, 0.0});
  EXPECT_NEAR(g(0, 2), 2.0, 1e-15);
  EXPECT_NEAR(g(2, 2), 5.0, 1e-15);
}

TEST(Metric, DegenerateAxisRejected) {
  EXPECT_EQ(code_of([] { metric_components(catalog("hopf"), {0.0, 0.0}); }), ErrorCode::Domain);
}

TEST(Metric, CatalogErrors) {
  EXPECT_EQ(code_of([] { catalog("torus"); }), ErrorCode::UnknownCatalogName);
  EXPECT_EQ(code_of([] { catalog("hopf", {{"R", -1.0}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { catalog("nil", {{"R", 1.0}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { catalog("cf_family", {{"h_sin", 1.5}}); }), ErrorCode::BadParams);
  EXPECT_EQ(code_of([] { catalog("cf_family", {{"B", 1.0}, {"C", -1.0}}); }), ErrorCode::InadmissibleParams);
}

TEST(Metric, CatalogKeys) {
  EXPECT_TRUE(catalog_keys("flat").empty());
  EXPECT_EQ(catalog_keys("hopf"), std::vector<std::string>{"R"});
  EXPECT_EQ(code_of([] { catalog_keys("sphere"); }), ErrorCode::UnknownCatalogName);
}

TEST(Metric, GridCsvRoundTrip) {
  const MetricSpec s = catalog("nil", {{"omega0", 0.5}});
  const GridData g = sample_grid(s, -1.0, 1.0, 7, 0.0, 1.0, 6);
  const GridData back = read_grid_csv(write_grid_csv(g));
  EXPECT_EQ(back.r, g.r);
  EXPECT_EQ(back.theta, g.theta);
  EXPECT_EQ(back.phi, g.phi);
  EXPECT_EQ(back.h, g.h);
  EXPECT_EQ(back.k, g.k);
}

TEST(Metric, GridCsvErrorsCarryLineNumbers) {
  try {
    read_grid_csv("r,theta,phi,h,k\n0,0,1,0,0\n0,1,1,x,0\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::Parse);
    EXPECT_NE(std::string(e.what()).find("line 3"), std::string::npos);
  }
  EXPECT_EQ(code_of([] { read_grid_csv("a,b\n"); }), ErrorCode::Parse);
  EXPECT_EQ(code_of([] { read_grid_csv("r,theta,phi,h,k\n0,0,1,0,0\n0,1,1,0,0\n1,0,1,0,0\n"); }), ErrorCode::Parse);
}

TEST(Metric, GridFieldDerivatives) {
  const MetricSpec s = catalog("hyperbolic");
  const MetricSpec g = grid_spec(sample_grid(s, -1.0, 1.0, 81, 0.0, 1.0, 11));
  const Jet a = g.phi(0.3137, 0.42), b = s.phi(0.3137, 0.42);
  EXPECT_NEAR(a.value(), b.value(), 1e-10);
  EXPECT_NEAR(a.d_r(), b.d_r(), 1e-8);
  EXPECT_NEAR(a.d_rr(), b.d_rr(), 1e-6);
  EXPECT_NEAR(a.d_rrr(), b.d_rrr(), 1e-4);
  EXPECT_NEAR(a.d_theta(), 0.0, 1e-10);
  EXPECT_EQ(g.phi.provenance(), Provenance::GridSampled);
}

TEST(Metric, GridFieldOutsideRangeIsDomainError) {
  const MetricSpec g = grid_spec(sample_grid(catalog("flat"), 0.0, 1.0, 8, 0.0, 1.0, 8));
  EXPECT_EQ(code_of([&] { g.phi(1.5, 0.5); }), ErrorCode::Domain);
  EXPECT_EQ(code_of([] { grid_spec(sample_grid(catalog("flat"), 0.0, 1.0, 4, 0.0, 1.0, 8)); }), ErrorCode::BadParams);
}

TEST(Metric, GridSampledStructureEquations) {
  // 200 x 200 samples of the hopf metric; the interpolated route must reproduce the identities.
  const MetricSpec exact = catalog("hopf");
  const MetricSpec g = grid_spec(sample_grid(exact, 0.1, 1.45, 200, 0.0, 2 * std::numbers::pi, 200));
  testing_support::Case c{"hopf", exact, 0.2, 1.35};
  double worst = 0.0;
  for (const Point& p : testing_support::seeded_points(c, 100)) worst = std::max(worst, structure_residuals(g, p).max_structure());
  EXPECT_LT(worst, 1e-4);
}
