#pragma once

// Coordinate-level differential geometry on jets: metric, Levi-Civita
// connection, curvature, and vector-field calculus in (t, r, theta).
// Nothing depends on t, so every jet is a jet in (r, theta) only.

#include <array>

#include "killing3/jet.hpp"
#include "killing3/metric.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

using VecJet = std::array<Jet, 3>;
using MatJet = std::array<std::array<Jet, 3>, 3>;

struct FieldJets {
  Jet phi, h, k;
};

/// Jets of (phi, h, k); throws Domain if phi <= kPhiCutoff and NonFinite on bad samples.
FieldJets field_jets(const MetricSpec& spec, const Point& p, int order);

struct MetricJets {
  MatJet g;     // g_ab
  MatJet ginv;  // g^ab
  Signature signature = Signature::Riemannian;
  Point point;
  int order = kMaxJetOrder;
};

MetricJets metric_jets(const MetricSpec& spec, const Point& p, int order);
MetricJets metric_jets(const FieldJets& f, Signature signature, const Point& p);

/// g~ = e^{2f} g.
MetricJets conformal_metric(const MetricJets& m, const Jet& f);

struct FrameJets {
  VecJet T, X, Y;

  std::array<VecJet, 3> as_array() const { return {T, X, Y}; }
};

FrameJets canonical_frame_jets(const FieldJets& f);

Vec3 values(const VecJet& v);
VecJet scaled(const Jet& s, const VecJet& v);
VecJet operator+(const VecJet& a, const VecJet& b);
VecJet operator-(const VecJet& a, const VecJet& b);

class Geometry {
 public:
  explicit Geometry(MetricJets metric);
  static Geometry at(const MetricSpec& spec, const Point& p, int order = kMaxJetOrder);

  const MetricJets& metric() const { return m_; }
  Signature signature() const { return m_.signature; }
  const Point& point() const { return m_.point; }

  /// Gamma^a_bc.
  const Jet& christoffel(int a, int b, int c) const { return gamma_[a][b][c]; }
  /// R^a_bcd with (R(d_c, d_d) d_b)^a = R^a_bcd.
  /// Curvature needs metric jets of order >= 2; otherwise these throw JetOrder.
  const Jet& riemann(int a, int b, int c, int d) const;
  const Jet& ricci(int b, int d) const;
  const Jet& scalar() const;
  bool has_curvature() const { return m_.order >= 2; }

  Jet inner(const VecJet& v, const VecJet& w) const;
  Jet ric(const VecJet& v, const VecJet& w) const;
  /// v(f) = v^a d_a f.
  Jet apply(const VecJet& v, const Jet& f) const;
  VecJet covariant(const VecJet& v, const VecJet& w) const;
  VecJet bracket(const VecJet& v, const VecJet& w) const;
  /// Coordinate components of the Lie derivative of g along v.
  MatJet lie_metric(const VecJet& v) const;

  /// g(R(a,b)c, d) at the base point.
  double riemann4(const Vec3& a, const Vec3& b, const Vec3& c, const Vec3& d) const;

 private:
  MetricJets m_;
  std::array<std::array<std::array<Jet, 3>, 3>, 3> gamma_;
  std::array<std::array<std::array<std::array<Jet, 3>, 3>, 3>, 3> riem_;
  MatJet ric_;
  Jet scalar_;
};

using ConnectionJets = std::array<std::array<std::array<Jet, 3>, 3>, 3>;

/// c[i][j][k] = g(nabla_{e_i} e_j, e_k).
ConnectionJets frame_connection(const Geometry& geo, const std::array<VecJet, 3>& e);

/// g(e_0, [e_1, e_2]) read off the connection coefficients.
Jet frame_twist(const ConnectionJets& c);

}  // namespace killing3
