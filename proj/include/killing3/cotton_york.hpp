#pragma once

// Cotton-York tensor of a canonical metric in the frame {T, X, Y}, evaluated
// from the twist w, the scalar curvature S and their frame derivatives.

#include <vector>

#include "killing3/metric.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

struct CottonYorkMatrix {
  Mat3 raw;  // raw(j, i) = row j of column c_i, as evaluated
  Sym3 c;    // symmetrized raw
  Point point;

  double symmetry_residual() const;
  double trace() const { return raw.trace(); }
  double norm() const { return raw.frobenius(); }
};

/// Needs jets of order 3 (second derivatives of w, first of S).
CottonYorkMatrix cotton_york(const MetricSpec& spec, const Point& p);

enum class FlatVerdict { Flat, NotFlat, Inconclusive };
const char* to_string(FlatVerdict v);

struct FlatnessTolerances {
  double cy_analytic = 1e-8;
  double cy_grid = 1e-4;
  double fit = 1e-6;
};

struct FlatnessFit {
  double B = 0.0, C = 0.0;
  double residual_max = 0.0;  // max wPDE residual at the fitted (B, C)
  double cy_max = 0.0;
  double cy_tolerance = 0.0;
  bool non_unique = false;      // constant Ric(T,T): only C - 2B Ric(T,T) is determined, B = 0 reported
  bool constant_twist = false;
  double shortcut_max = 0.0;    // max |S - 3 Ric(T,T)|
  std::size_t points = 0;
  FlatVerdict verdict = FlatVerdict::Inconclusive;
};

FlatnessFit flatness_verdict(const MetricSpec& spec, const std::vector<Point>& grid,
                             const FlatnessTolerances& tol = {});

/// ||CY - (Ric - S g / 3)|| in frame components (Frobenius).
double tmg_residual(const MetricSpec& spec, const Point& p);

}  // namespace killing3
