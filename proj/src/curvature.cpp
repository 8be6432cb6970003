#include "killing3/curvature.hpp"

#include <algorithm>
#include <cmath>

#include "killing3/geometry.hpp"

namespace killing3 {

namespace {

Sym3 frame_ricci(const Geometry& geo, const FrameJets& f) {
  const auto e = f.as_array();
  Sym3 out;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = i; j < 3; ++j) out.set(i, j, geo.ric(e[i], e[j]).value());
  return out;
}

}  // namespace

Christoffels christoffels(const MetricSpec& spec, const Point& p) {
  const Geometry geo = Geometry::at(spec, p, 1);
  Christoffels out{};
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) out[a][b][c] = geo.christoffel(a, b, c).value();
  return out;
}

Riemann4 riemann(const MetricSpec& spec, const Point& p) {
  const Geometry geo = Geometry::at(spec, p, 2);
  const FrameAt f = canonical_frame(spec, p);
  const auto e = f.as_array();
  Riemann4 out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) out.at(a, b, c, d) = geo.riemann4(e[a], e[b], e[c], e[d]);
  return out;
}

std::array<double, 3> closed_form_spectrum(double S, double w, double grad_sq, double* delta) {
  const double q = S - 1.5 * w * w;
  const double d = 0.25 * q * q + grad_sq;
  if (delta) *delta = d;
  const double root = std::sqrt(std::max(d, 0.0));
  const double mid = 0.25 * S + 0.125 * w * w;
  return {mid + 0.5 * root, mid - 0.5 * root, 0.5 * S - 0.25 * w * w};
}

CurvaturePacket curvature_packet(const MetricSpec& spec, const Point& p) {
  if (spec.signature != Signature::Riemannian)
    fail(ErrorCode::BadParams, "the Ricci operator packet is defined for Riemannian signature");
  const FieldJets fj = field_jets(spec, p, 2);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  const FrameJets f = canonical_frame_jets(fj);
  const auto e = f.as_array();

  CurvaturePacket out;
  out.point = p;
  out.ricci = frame_ricci(geo, f);
  out.scalar_S = geo.scalar().value();
  out.ric_operator = out.ricci;

  const Jet w = frame_twist(frame_connection(geo, e));
  out.omega = w.value();
  out.X_omega = geo.apply(f.X, w).value();
  out.Y_omega = geo.apply(f.Y, w).value();

  const double S = out.scalar_S, w2 = out.omega * out.omega;
  out.ham1 = 0.5 * Sym3(w2, -out.Y_omega, out.X_omega, S - 0.5 * w2, 0.0, S - 0.5 * w2);
  out.ham1_residual = (out.ham1 - out.ric_operator).max_abs();

  const double grad_sq = out.X_omega * out.X_omega + out.Y_omega * out.Y_omega;
  out.spectrum = closed_form_spectrum(S, out.omega, grad_sq, &out.delta);
  out.direct_spectrum = sym_eig3(out.ric_operator).values;
  return out;
}

CurvatureScalars curvature_scalars(const MetricSpec& spec, const Point& p) {
  const FieldJets fj = field_jets(spec, p, 2);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  return {geo.scalar().value(), frame_ricci(geo, canonical_frame_jets(fj))};
}

RicciOfT ricci_of_t(const MetricSpec& spec, const Point& p) {
  const CurvatureScalars c = curvature_scalars(spec, p);
  RicciOfT out;
  out.point = p;
  out.tt = c.ricci(0, 0);
  out.tx = c.ricci(0, 1);
  out.ty = c.ricci(0, 2);
  out.norm_sq = out.tt * out.tt + out.tx * out.tx + out.ty * out.ty;
  return out;
}

double gauss_residual(const MetricSpec& spec, const Point& p) {
  const FieldJets fj = field_jets(spec, p, 2);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  const FrameJets f = canonical_frame_jets(fj);
  const double S = geo.scalar().value();
  const double ric_tt = geo.ric(f.T, f.T).value();
  const double s = spec.signature == Signature::Riemannian ? 1.0 : -1.0;
  // Lorentzian: the quotient curvature is (S_L - Ric_L(T,T)) / 2.
  return std::abs(-fj.phi.d_rr() / fj.phi.value() - 0.5 * (S + s * ric_tt));
}

HamiltonResult hamilton_inequality(const MetricSpec& spec, const std::vector<Point>& grid) {
  if (grid.empty()) fail(ErrorCode::EmptyGrid, "no points for the inequality test");
  HamiltonResult out;
  for (const Point& p : grid) {
    const CurvaturePacket c = curvature_packet(spec, p);
    const double w = c.omega;
    if (std::abs(w) < 1e-12)
      fail(ErrorCode::TwistZero, "twist vanishes at (r=" + std::to_string(p.r) + ", theta=" +
                                     std::to_string(p.theta) + "); the inequality is undefined");
    const double tt = c.ricci(0, 0);
    const double norm_sq = tt * tt + c.ricci(0, 1) * c.ricci(0, 1) + c.ricci(0, 2) * c.ricci(0, 2);
    const double grad_sq = c.X_omega * c.X_omega + c.Y_omega * c.Y_omega;
    HamiltonPoint hp;
    hp.point = p;
    hp.S = c.scalar_S;
    hp.rhs = 2.0 * norm_sq / tt - tt;
    hp.rhs_twice = 2.0 * grad_sq / (w * w) + w * w;
    hp.rhs_prelim = grad_sq / (w * w) + 0.5 * w * w;
    hp.holds = hp.S > hp.rhs;
    hp.holds_twice = hp.S > hp.rhs_twice;
    hp.holds_prelim = hp.S > hp.rhs_prelim;
    out.all_hold = out.all_hold && hp.holds;
    out.all_hold_twice = out.all_hold_twice && hp.holds_twice;
    out.points.push_back(hp);
  }
  return out;
}

}  // namespace killing3
