#include "killing3/geometry.hpp"

#include <cmath>

namespace killing3 {

namespace {

void check_finite(const Jet& j, const char* what) {
  for (double c : j.coefficients())
    if (!std::isfinite(c)) fail(ErrorCode::NonFinite, std::string("non-finite jet for ") + what);
}

}  // namespace

FieldJets field_jets(const MetricSpec& spec, const Point& p, int order) {
  if (!std::isfinite(p.r) || !std::isfinite(p.theta)) fail(ErrorCode::NonFinite, "non-finite evaluation point");
  FieldJets f{spec.phi(p, order), spec.h(p, order), spec.k(p, order)};
  check_finite(f.phi, "phi");
  check_finite(f.h, "h");
  check_finite(f.k, "k");
  if (f.phi.value() <= kPhiCutoff)
    fail(ErrorCode::Domain, "phi = " + std::to_string(f.phi.value()) + " at (r=" + std::to_string(p.r) +
                                ", theta=" + std::to_string(p.theta) + ") is below the degeneracy cutoff");
  return f;
}

MetricJets metric_jets(const FieldJets& f, Signature signature, const Point& p) {
  const int n = std::min({f.phi.order(), f.h.order(), f.k.order()});
  const double s = signature == Signature::Riemannian ? 1.0 : -1.0;
  const VecJet tb{Jet(1.0, n), -f.k, -(f.phi * f.h)};
  MetricJets m;
  m.signature = signature;
  m.point = p;
  m.order = n;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m.g[a][b] = s * (tb[a] * tb[b]);
  m.g[1][1] += Jet(1.0, n);
  m.g[2][2] += f.phi * f.phi;
  // g^{-1} = s T T + X X + Y Y for the orthonormal frame.
  const FrameJets e = canonical_frame_jets(f);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) m.ginv[a][b] = s * (e.T[a] * e.T[b]) + e.X[a] * e.X[b] + e.Y[a] * e.Y[b];
  return m;
}

MetricJets metric_jets(const MetricSpec& spec, const Point& p, int order) {
  return metric_jets(field_jets(spec, p, order), spec.signature, p);
}

MetricJets conformal_metric(const MetricJets& m, const Jet& f) {
  MetricJets out = m;
  const Jet up = exp(2.0 * f), down = exp(-2.0 * f);
  out.order = std::min(m.order, f.order());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      out.g[a][b] = up * m.g[a][b];
      out.ginv[a][b] = down * m.ginv[a][b];
    }
  return out;
}

FrameJets canonical_frame_jets(const FieldJets& f) {
  const int n = std::min({f.phi.order(), f.h.order(), f.k.order()});
  const Jet zero(0.0, n), one(1.0, n);
  FrameJets e;
  e.T = {one, zero, zero};
  e.X = {f.h, zero, 1.0 / f.phi};
  e.Y = {f.k, one, zero};
  return e;
}

Vec3 values(const VecJet& v) { return Vec3{{v[0].value(), v[1].value(), v[2].value()}}; }

VecJet scaled(const Jet& s, const VecJet& v) { return {s * v[0], s * v[1], s * v[2]}; }

VecJet operator+(const VecJet& a, const VecJet& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }

VecJet operator-(const VecJet& a, const VecJet& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }

Geometry::Geometry(MetricJets metric) : m_(std::move(metric)) {
  if (m_.order < 1) fail(ErrorCode::JetOrder, "connection needs metric jets of order >= 1");
  std::array<MatJet, 3> dg;  // dg[c][a][b] = d_c g_ab
  for (int c = 0; c < 3; ++c)
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) dg[c][a][b] = m_.g[a][b].partial(c);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = b; c < 3; ++c) {
        Jet acc(0.0, m_.order - 1);
        for (int d = 0; d < 3; ++d) acc += m_.ginv[a][d] * (dg[b][d][c] + dg[c][d][b] - dg[d][b][c]);
        gamma_[a][b][c] = 0.5 * acc;
        gamma_[a][c][b] = gamma_[a][b][c];
      }
  if (!has_curvature()) return;
  const int n = m_.order - 2;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c)
        for (int d = 0; d < 3; ++d) {
          if (d == c) {
            riem_[a][b][c][d] = Jet(0.0, n);
            continue;
          }
          if (d < c) {
            riem_[a][b][c][d] = -riem_[a][b][d][c];
            continue;
          }
          Jet acc = gamma_[a][d][b].partial(c) - gamma_[a][c][b].partial(d);
          for (int e = 0; e < 3; ++e) acc += gamma_[a][c][e] * gamma_[e][d][b] - gamma_[a][d][e] * gamma_[e][c][b];
          riem_[a][b][c][d] = acc;
        }
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) {
      Jet acc(0.0, n);
      for (int a = 0; a < 3; ++a) acc += riem_[a][b][a][d];
      ric_[b][d] = acc;
    }
  scalar_ = Jet(0.0, n);
  for (int b = 0; b < 3; ++b)
    for (int d = 0; d < 3; ++d) scalar_ += m_.ginv[b][d] * ric_[b][d];
}

Geometry Geometry::at(const MetricSpec& spec, const Point& p, int order) { return Geometry(metric_jets(spec, p, order)); }

namespace {

[[noreturn]] void no_curvature() {
  fail(ErrorCode::JetOrder, "curvature requested from metric jets of order < 2");
}

}  // namespace

const Jet& Geometry::riemann(int a, int b, int c, int d) const {
  if (!has_curvature()) no_curvature();
  return riem_[a][b][c][d];
}

const Jet& Geometry::ricci(int b, int d) const {
  if (!has_curvature()) no_curvature();
  return ric_[b][d];
}

const Jet& Geometry::scalar() const {
  if (!has_curvature()) no_curvature();
  return scalar_;
}

Jet Geometry::inner(const VecJet& v, const VecJet& w) const {
  Jet acc(0.0, m_.order);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc += m_.g[a][b] * v[a] * w[b];
  return acc;
}

Jet Geometry::ric(const VecJet& v, const VecJet& w) const {
  if (!has_curvature()) no_curvature();
  Jet acc(0.0, m_.order);
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) acc += ric_[a][b] * v[a] * w[b];
  return acc;
}

Jet Geometry::apply(const VecJet& v, const Jet& f) const { return v[1] * f.dr() + v[2] * f.dtheta(); }

VecJet Geometry::covariant(const VecJet& v, const VecJet& w) const {
  VecJet out;
  for (int a = 0; a < 3; ++a) {
    Jet acc = apply(v, w[a]);
    for (int b = 0; b < 3; ++b)
      for (int c = 0; c < 3; ++c) acc += gamma_[a][b][c] * v[b] * w[c];
    out[a] = acc;
  }
  return out;
}

VecJet Geometry::bracket(const VecJet& v, const VecJet& w) const {
  VecJet out;
  for (int a = 0; a < 3; ++a) out[a] = apply(v, w[a]) - apply(w, v[a]);
  return out;
}

MatJet Geometry::lie_metric(const VecJet& v) const {
  MatJet out;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      Jet acc = apply(v, m_.g[a][b]);
      for (int c = 0; c < 3; ++c) acc += m_.g[c][b] * v[c].partial(a) + m_.g[a][c] * v[c].partial(b);
      out[a][b] = acc;
    }
  return out;
}

double Geometry::riemann4(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) const {
  if (!has_curvature()) no_curvature();
  double acc = 0.0;
  for (int e = 0; e < 3; ++e)
    for (int f = 0; f < 3; ++f) {
      const double ge = m_.g[e][f].value() * d[f];
      if (ge == 0.0) continue;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
          for (int k = 0; k < 3; ++k) acc += ge * riem_[e][i][j][k].value() * c[i] * a[j] * b[k];
    }
  return acc;
}

ConnectionJets frame_connection(const Geometry& geo, const std::array<VecJet, 3>& e) {
  ConnectionJets c;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const VecJet d = geo.covariant(e[i], e[j]);
      for (int k = 0; k < 3; ++k) c[i][j][k] = geo.inner(d, e[k]);
    }
  return c;
}

Jet frame_twist(const ConnectionJets& c) { return c[1][2][0] - c[2][1][0]; }

}  // namespace killing3
