#include "killing3/cotton_york.hpp"

#include <algorithm>
#include <cmath>

#include "killing3/curvature.hpp"
#include "killing3/geometry.hpp"

namespace killing3 {

double CottonYorkMatrix::symmetry_residual() const {
  return std::max({std::abs(raw(0, 1) - raw(1, 0)), std::abs(raw(0, 2) - raw(2, 0)), std::abs(raw(1, 2) - raw(2, 1))});
}

CottonYorkMatrix cotton_york(const MetricSpec& spec, const Point& p) {
  if (spec.signature != Signature::Riemannian)
    fail(ErrorCode::BadParams, "Cotton-York evaluation is implemented for Riemannian signature");
  const FieldJets fj = field_jets(spec, p, 3);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  const FrameJets f = canonical_frame_jets(fj);
  const ConnectionJets conn = frame_connection(geo, f.as_array());

  const Jet w = frame_twist(conn);
  const Jet Xw = geo.apply(f.X, w), Yw = geo.apply(f.Y, w);
  const double divY = (conn[0][2][0] + conn[1][2][1]).value();
  const double XXw = geo.apply(f.X, Xw).value(), YYw = geo.apply(f.Y, Yw).value(), YXw = geo.apply(f.Y, Xw).value();
  const Jet& S = geo.scalar();
  const double XS = geo.apply(f.X, S).value(), YS = geo.apply(f.Y, S).value();
  const double o = w.value(), s = S.value(), xo = Xw.value(), yo = Yw.value();
  const double o3 = o * o * o;

  const Vec3 c1{{-0.75 * o3 + 0.5 * s * o + 0.5 * divY * yo + 0.5 * (XXw + YYw), -0.25 * YS + 1.25 * o * yo,
                 0.25 * XS - 1.25 * o * xo}};
  const Vec3 c2{{1.25 * o * yo - 0.25 * YS, 0.375 * o3 - 0.25 * s * o - 0.5 * YYw, 0.5 * YXw}};
  const Vec3 c3{{0.25 * XS - 1.25 * o * xo, 0.5 * YXw, 0.375 * o3 - 0.25 * s * o - 0.5 * yo * divY - 0.5 * XXw}};

  CottonYorkMatrix out;
  out.point = p;
  out.raw = Mat3::from_columns(c1, c2, c3);
  out.c = Sym3::from_mat(out.raw);
  return out;
}

const char* to_string(FlatVerdict v) {
  switch (v) {
    case FlatVerdict::Flat: return "Flat";
    case FlatVerdict::NotFlat: return "NotFlat";
    case FlatVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

FlatnessFit flatness_verdict(const MetricSpec& spec, const std::vector<Point>& grid, const FlatnessTolerances& tol) {
  if (grid.empty()) fail(ErrorCode::EmptyGrid, "flatness verdict needs at least one point");
  FlatnessFit fit;
  fit.points = grid.size();
  const bool analytic = spec.phi.provenance() == Provenance::Analytic && spec.h.provenance() == Provenance::Analytic &&
                        spec.k.provenance() == Provenance::Analytic;
  fit.cy_tolerance = analytic ? tol.cy_analytic : tol.cy_grid;

  std::vector<double> xs, ys;
  double w_min = INFINITY, w_max = -INFINITY;
  for (const Point& p : grid) {
    fit.cy_max = std::max(fit.cy_max, cotton_york(spec, p).norm());
    const CurvaturePacket c = curvature_packet(spec, p);
    const double tt = c.ricci(0, 0);
    const double norm_sq = tt * tt + c.ricci(0, 1) * c.ricci(0, 1) + c.ricci(0, 2) * c.ricci(0, 2);
    xs.push_back(tt);
    ys.push_back(4.0 * norm_sq - 3.0 * tt * tt);
    w_min = std::min(w_min, c.omega);
    w_max = std::max(w_max, c.omega);
    fit.shortcut_max = std::max(fit.shortcut_max, std::abs(c.scalar_S - 3.0 * tt));
  }
  fit.constant_twist = w_max - w_min <= 1e-10 * std::max(1.0, std::abs(w_max));

  // y = -2 B x + C by least squares.
  const double n = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i] / n;
    my += ys[i] / n;
  }
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  if (sxx <= 1e-20 * std::max(1.0, mx * mx) * n) {
    fit.non_unique = true;
    fit.B = 0.0;
    fit.C = my;
  } else {
    const double slope = sxy / sxx;
    fit.B = -0.5 * slope;
    fit.C = my - slope * mx;
  }
  for (std::size_t i = 0; i < xs.size(); ++i)
    fit.residual_max = std::max(fit.residual_max, std::abs(ys[i] + 2.0 * fit.B * xs[i] - fit.C));

  if (fit.cy_max < fit.cy_tolerance && fit.residual_max < tol.fit) fit.verdict = FlatVerdict::Flat;
  else if (fit.cy_max >= 10.0 * fit.cy_tolerance) fit.verdict = FlatVerdict::NotFlat;
  else fit.verdict = FlatVerdict::Inconclusive;
  return fit;
}

double tmg_residual(const MetricSpec& spec, const Point& p) {
  const CottonYorkMatrix cy = cotton_york(spec, p);
  const CurvaturePacket c = curvature_packet(spec, p);
  const Sym3 traceless = c.ricci - (c.scalar_S / 3.0) * Sym3::identity();
  return (cy.raw - traceless.to_mat()).frobenius();
}

}  // namespace killing3
