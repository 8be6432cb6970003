// Acceptance gate: one PASS/FAIL line per criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "killing3/completeness.hpp"
#include "killing3/conformal_family.hpp"
#include "killing3/cotton_york.hpp"
#include "killing3/curvature.hpp"
#include "killing3/lorentz.hpp"
#include "killing3/np.hpp"
#include "support.hpp"

using namespace killing3;
using testing_support::catalog_cases;
using testing_support::Case;
using testing_support::seeded_points;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [" << what << "]";
    }
  }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Case> cf_instances() {
  return {{"cf(0,1,0)", catalog("cf_family"), -1.7, 1.7},
          {"cf(-1,-0.5,sqrt2)", catalog("cf_family", {{"B", -1.0}, {"C", -0.5}, {"omega0", std::sqrt(2.0)}}), -0.3, 0.3},
          {"cf(-0.3,2,0.5)", catalog("cf_family", {{"B", -0.3}, {"C", 2.0}, {"omega0", 0.5}}), -0.5, 0.5},
          {"cf(0,1,0,h_sin)", catalog("cf_family", {{"h_sin", 0.4}}), -1.5, 1.5}};
}

ScalarField seeded_scalar(unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double a = u(rng), b = u(rng), c = u(rng);
  return ScalarField::analytic([a, b, c](const Jet& r, const Jet& t) { return a * r * r + b * sin(t) + c * r * t; });
}

VectorField perturbed_field(const MetricSpec& spec, double eps) {
  return [spec, eps](double r, double theta, int order) {
    const Jet R = Jet::variable_r(r, order);
    VecJet v{Jet(1.0, order), Jet(0.0, order), eps * R};
    const Geometry geo(metric_jets(spec, {r, theta}, order));
    return scaled(1.0 / sqrt(geo.inner(v, v)), v);
  };
}

GeodesicState unit_state(const MetricSpec& s, Point p, double c, double a, double b) {
  GeodesicState st = frame_initial_state(s, p, c, a, b);
  st.velocity = (1.0 / std::sqrt(std::abs(st.speed))) * st.velocity;
  return st;
}

void c1(Outcome& o) {
  double worst = 0.0, slowest = 0.0;
  for (double R : {1.0, 2.0, 0.5}) {
    const auto t0 = std::chrono::steady_clock::now();
    const MetricSpec s = catalog("hopf", {{"R", R}});
    const Case c{"hopf", s, 0.05 * R, (std::numbers::pi / 2 - 0.05) * R};
    for (const Point& p : seeded_points(c, 20)) {
      const CurvaturePacket k = curvature_packet(s, p);
      worst = std::max({worst, testing_support::rel(k.ricci(0, 0), 2 / (R * R)) * R * R / 2,
                        std::abs(k.scalar_S - 6 / (R * R)) / (6 / (R * R)),
                        std::abs(k.omega * k.omega - 4 / (R * R)) / (4 / (R * R)),
                        std::abs(k.ricci(0, 0) - 2 / (R * R)) / (2 / (R * R))});
    }
    slowest = std::max(slowest, seconds_since(t0));
  }
  o.detail << "max rel err " << worst << ", slowest radius " << slowest << " s";
  o.require(worst < 1e-8, "relative error");
  o.require(slowest < 1.0, "runtime");
}

void c2(Outcome& o) {
  const auto t0 = std::chrono::steady_clock::now();
  const MetricSpec s = catalog("hopf");
  double cy = 0.0, shortcut = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const Point p{0.05 + (std::numbers::pi / 2 - 0.1) * i / 31.0, 2 * std::numbers::pi * j / 31.0};
      cy = std::max(cy, cotton_york(s, p).norm());
      const CurvatureScalars k = curvature_scalars(s, p);
      shortcut = std::max(shortcut, std::abs(k.S - 3 * k.ric_TT()));
    }
  const double dt = seconds_since(t0);
  o.detail << "|CY| " << cy << ", |S - 3Ric(T,T)| " << shortcut << ", " << dt << " s";
  o.require(cy < 1e-8, "full path");
  o.require(shortcut < 1e-8, "constant-twist test");
  o.require(dt < 5.0, "runtime");
}

void c3(Outcome& o) {
  const MetricSpec s = catalog("nil", {{"omega0", 1.0}});
  double s_err = 0.0, cy_err = 0.0;
  std::vector<Point> grid;
  for (const Point& p : seeded_points({"nil", s, -3, 3}, 20)) {
    s_err = std::max(s_err, std::abs(curvature_scalars(s, p).S + 0.5));
    cy_err = std::max(cy_err, (cotton_york(s, p).raw - Mat3::diag(-1.0, 0.5, 0.5)).max_abs());
    grid.push_back(p);
  }
  const FlatnessFit f = flatness_verdict(s, grid);
  o.detail << "|S + 1/2| " << s_err << ", |CY - diag(-1,1/2,1/2)| " << cy_err << ", verdict " << to_string(f.verdict);
  o.require(s_err < 1e-8 && cy_err < 1e-8, "values");
  o.require(f.verdict == FlatVerdict::NotFlat, "verdict");
}

void c4(Outcome& o) {
  double analytic = 0.0, sampled = 0.0;
  for (const auto& c : catalog_cases()) {
    const std::vector<Point> pts = seeded_points(c, 100);
    for (const Point& p : pts) analytic = std::max(analytic, structure_residuals(c.spec, p).max_structure());
    // Grid covering the sampling box with a margin for the interpolation stencil.
    const double margin = 0.02 * (c.r_hi - c.r_lo);
    const MetricSpec g = grid_spec(sample_grid(c.spec, c.r_lo - margin, c.r_hi + margin, 200, -0.05,
                                               2 * std::numbers::pi + 0.05, 200));
    for (const Point& p : pts) sampled = std::max(sampled, structure_residuals(g, p).max_structure());
  }
  o.detail << "analytic " << analytic << ", grid-sampled 200x200 " << sampled;
  o.require(analytic < 1e-8, "analytic");
  o.require(sampled < 1e-4, "grid-sampled");
}

void c5(Outcome& o) {
  double worst = 0.0;
  std::vector<Case> cases = catalog_cases();
  for (const auto& c : cf_instances()) cases.push_back(c);
  for (const auto& c : cases)
    for (const Point& p : seeded_points(c, 100)) worst = std::max(worst, gauss_residual(c.spec, p));
  o.detail << "max " << worst;
  o.require(worst < 1e-8, "residual");
}

void c6(Outcome& o) {
  double worst = 0.0;
  for (const auto& c : catalog_cases())
    for (const Point& p : seeded_points(c, 100)) {
      const CurvaturePacket k = curvature_packet(c.spec, p);
      std::array<double, 3> a = k.spectrum, b = k.direct_spectrum;
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      for (int i = 0; i < 3; ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    }
  const CurvaturePacket h = curvature_packet(catalog("hopf"), {0.6, 0.3});
  double hopf_err = 0.0;
  for (double l : h.spectrum) hopf_err = std::max(hopf_err, std::abs(l - 2.0));
  o.detail << "closed form vs eigensolve " << worst << ", hopf (2,2,2) err " << hopf_err;
  o.require(worst < 1e-9, "multiset agreement");
  o.require(hopf_err < 1e-9, "hopf spectrum");
}

void c7(Outcome& o) {
  double sym = 0.0, tr = 0.0;
  std::vector<Case> cases = catalog_cases();
  for (const auto& c : cf_instances()) cases.push_back(c);
  for (const auto& c : cases)
    for (const Point& p : seeded_points(c, 50)) {
      const CottonYorkMatrix cy = cotton_york(c.spec, p);
      sym = std::max(sym, cy.symmetry_residual());
      tr = std::max(tr, std::abs(cy.trace()));
    }
  o.detail << "symmetry " << sym << ", trace " << tr;
  o.require(sym < 1e-9 && tr < 1e-9, "invariants");
}

void c8(Outcome& o) {
  const MetricSpec s = catalog("cf_family", {{"B", 0.0}, {"C", 1.0}, {"omega0", 0.0}});
  const std::vector<Point> pts = seeded_points({"cf", s, -1.7, 1.7}, 100);
  double cy = 0.0;
  for (const Point& p : pts) cy = std::max(cy, cotton_york(s, p).norm());
  const FlatnessFit f = flatness_verdict(s, pts);
  FamilyParams fp;
  const OmegaSolution sol = solve_omega_ode(fp);
  const double periods = sol.period ? (sol.r_hi() - sol.r_lo()) / *sol.period : 0.0;
  o.detail << "|CY| " << cy << ", fit (" << f.B << ", " << f.C << "), energy drift " << sol.energy_drift << " over "
           << periods << " periods";
  o.require(cy < 1e-6, "CY");
  o.require(std::abs(f.B) < 1e-4 && std::abs(f.C - 1.0) < 1e-4, "fit");
  o.require(sol.energy_drift < 1e-8 && periods >= 10.0, "energy");
}

void c9(Outcome& o) {
  double worst = 0.0;
  for (const auto& c : catalog_cases()) {
    const SignaturePair pair = to_lorentz(c.spec);
    for (const Point& p : seeded_points(c, 50)) {
      const LorentzRelations r = lorentz_relations_check(pair, p);
      worst = std::max({worst, r.res_ric_tt, r.res_scalar});
    }
  }
  const double s_l = lorentz_relations_check(to_lorentz(catalog("hopf")), {0.6, 0.3}).S_L;
  o.detail << "max residual " << worst << ", hopf S_L = " << s_l;
  o.require(worst < 1e-8, "relations");
  o.require(std::abs(s_l - 10.0) < 1e-8, "hopf S_L");
}

void c10(Outcome& o) {
  double drift = 0.0, proj = 0.0;
  for (const char* name : {"hyperbolic", "hopf"}) {
    const MetricSpec s = catalog(name);
    for (const auto& [c, a, b] : std::vector<std::array<double, 3>>{{0.6, 0.8, 0.0}, {0.3, 0.5, 0.6}, {0.0, 0.6, -0.8}}) {
      const GeodesicResult r = integrate_geodesic(s, unit_state(s, {0.5, 0.2}, c, a, b), 100.0);
      drift = std::max({drift, r.c_drift_max, r.speed_drift_max});
      proj = std::max(proj, r.projection_residual);
    }
  }
  o.detail << "max drift " << drift << ", projection residual " << proj;
  o.require(drift < 1e-8, "conservation");
  o.require(proj < 1e-6, "projection");
}

void c11(Outcome& o) {
  const CurvatureProfile hyp = curvature_profile(catalog("hyperbolic"), 20.0, 64, 16);
  const CurvatureProfile flat = curvature_profile(catalog("flat"), 20.0, 64, 16);
  std::vector<double> r(64), ones(64, 1.0);
  for (int i = 0; i < 64; ++i) r[i] = i;
  const CompletenessVerdict syn = completeness_verdict(profile_from_samples(r, ones));
  o.detail << "hyperbolic " << to_string(completeness_verdict(hyp)) << " (tail " << hyp.tail_estimate << "), flat "
           << to_string(completeness_verdict(flat)) << " (tail " << flat.tail_estimate << "), constant +1 "
           << to_string(syn);
  o.require(completeness_verdict(hyp) == CompletenessVerdict::CompleteCriterion && std::abs(hyp.tail_estimate + 2) < 1e-8,
            "hyperbolic");
  o.require(completeness_verdict(flat) == CompletenessVerdict::CompleteCriterion && std::abs(flat.tail_estimate) < 1e-8,
            "flat");
  o.require(syn == CompletenessVerdict::IncompleteCriterion, "synthetic");
}

void c12(Outcome& o) {
  double killing = 0.0;
  for (const auto& c : catalog_cases()) {
    const KillingReport r = killing_test(c.spec, seeded_points(c, 50));
    killing = std::max({killing, r.max_geodesic, r.max_div, r.max_shear, r.max_lie});
  }
  const MetricSpec flat = catalog("flat");
  const KillingReport p = killing_test(flat, perturbed_field(flat, 0.01), {{1.0, 0.0}, {2.0, 1.0}, {3.0, 0.5}});
  const double joint = std::max({p.max_geodesic, p.max_div, p.max_shear});
  o.detail << "catalog max " << killing << "; perturbed geodesic " << p.max_geodesic << ", div " << p.max_div
           << ", shear " << p.max_shear << ", Lie " << p.max_lie;
  o.require(killing < 1e-9, "catalog fields");
  o.require(joint > 1e-4 && p.max_lie > 1e-4, "perturbed field");
}

void c13(Outcome& o) {
  double sigma = 0.0, omega = 0.0, sigma_size = INFINITY;
  for (const char* name : {"hopf", "hyperbolic"}) {
    const MetricSpec s = catalog(name);
    const VectorField v = perturbed_field(s, 0.3);
    for (unsigned seed : {11u, 12u, 13u})
      for (Point p : {Point{0.6, 0.8}, Point{1.0, 2.0}}) {
        const ScalarField f = seeded_scalar(seed);
        const ConformalCheck k = conformal_rescale_check(s, f, p);
        const ConformalCheck q = conformal_rescale_check(s, f, p, &v);
        sigma = std::max({sigma, k.sigma_residual, q.sigma_residual});
        omega = std::max({omega, k.omega_residual, q.omega_residual});
        sigma_size = std::min(sigma_size, std::abs(q.sigma));
      }
  }
  o.detail << "sigma law " << sigma << ", omega law " << omega << " (min |sigma| of the sheared field " << sigma_size
           << ")";
  o.require(sigma < 1e-8 && omega < 1e-8, "laws");
}

void c14(Outcome& o) {
  double worst = 0.0;
  std::vector<Case> cases = catalog_cases();
  cases.push_back({"generic", testing_support::generic_metric(), 0.2, 1.5});
  for (const auto& c : cases)
    for (unsigned seed : {21u, 22u, 23u})
      for (const Point& p : seeded_points(c, 5, seed)) worst = std::max(worst, rotate_frame(c.spec, p, seeded_scalar(seed)).max_residual());
  o.detail << "max residual " << worst;
  o.require(worst < 1e-9, "rotation laws");
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
      {"Hopf curvature values", c1},
      {"Round sphere conformally flat", c2},
      {"Nil counterexample", c3},
      {"Structure-equation suite", c4},
      {"Gaussian curvature of the quotient", c5},
      {"Ricci spectrum closed form", c6},
      {"Cotton-York symmetric and traceless", c7},
      {"Conformally flat family round trip", c8},
      {"Lorentz bridge relations", c9},
      {"Geodesic conservation", c10},
      {"Completeness criterion", c11},
      {"Killing characterization", c12},
      {"Conformal rescaling laws", c13},
      {"Gauge rotation laws", c14},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      criteria[i].second(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << " exception: " << e.what();
    }
    if (!o.pass) ++failures;
    std::printf("%s %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(), o.detail.str().c_str());
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
