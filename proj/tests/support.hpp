#pragma once

// Shared fixtures: the catalog metrics with safe sampling boxes, seeded points,
// and a generic metric with no symmetry beyond d/dt.

#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "killing3/metric.hpp"

namespace testing_support {

using killing3::MetricSpec;
using killing3::Point;

struct Case {
  std::string label;
  MetricSpec spec;
  double r_lo, r_hi;
};

inline std::vector<Case> catalog_cases() {
  using killing3::catalog;
  return {{"flat", catalog("flat"), 0.1, 3.0},
          {"hopf", catalog("hopf", {{"R", 1.0}}), 0.05, std::numbers::pi / 2 - 0.05},
          {"nil", catalog("nil", {{"omega0", 1.0}}), -3.0, 3.0},
          {"hyperbolic", catalog("hyperbolic"), -3.0, 3.0},
          {"cf_family", catalog("cf_family", {{"B", 0.0}, {"C", 1.0}, {"omega0", 0.0}}), -1.7, 1.7}};
}

inline std::vector<Point> seeded_points(const Case& c, std::size_t n, unsigned seed = 42) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> r(c.r_lo, c.r_hi), t(0.0, 2.0 * std::numbers::pi);
  std::vector<Point> out;
  for (std::size_t i = 0; i < n; ++i) {
    const double rr = r(rng);
    out.push_back({rr, t(rng)});
  }
  return out;
}

inline MetricSpec generic_metric() {
  using killing3::Jet;
  using killing3::ScalarField;
  MetricSpec s;
  s.name = "generic";
  s.phi = ScalarField::analytic([](const Jet& r, const Jet& t) { return 1.0 + 0.3 * sin(r) * cos(t) + r * r; });
  s.h = ScalarField::analytic([](const Jet& r, const Jet& t) { return 0.2 * r * t + 0.1 * cos(t); });
  s.k = ScalarField::analytic([](const Jet& r, const Jet& t) { return 0.1 * sin(t + r); });
  return s;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace testing_support
