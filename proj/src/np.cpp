#include "killing3/np.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace killing3 {

namespace {

using CCoef = std::array<Complex, 3>;

const double kR2 = 1.0 / std::sqrt(2.0);
const Complex kI(0.0, 1.0);
const CCoef kT{Complex(1.0), Complex(0.0), Complex(0.0)};
const CCoef kM{Complex(0.0), Complex(kR2), Complex(0.0, -kR2)};
const CCoef kMb{Complex(0.0), Complex(kR2), Complex(0.0, kR2)};

CJet contract(const ConnectionJets& c, const CCoef& a, const CCoef& b, const CCoef& d) {
  CJet acc(Complex(0.0), c[0][0][0].order());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        const Complex coef = a[i] * b[j] * d[k];
        if (coef != Complex(0.0)) acc += to_complex(c[i][j][k]) * coef;
      }
  return acc;
}

CJet ric_c(const std::array<std::array<Jet, 3>, 3>& ric, const CCoef& a, const CCoef& b) {
  CJet acc(Complex(0.0), ric[0][0].order());
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const Complex coef = a[i] * b[j];
      if (coef != Complex(0.0)) acc += to_complex(ric[i][j]) * coef;
    }
  return acc;
}

// Directional derivatives of complex jets along frame vectors.
struct FrameDerivs {
  const Geometry& geo;
  const FrameArray& e;

  CJet along(const VecJet& v, const CJet& f) const {
    return to_complex(v[1]) * f.dr() + to_complex(v[2]) * f.dtheta();
  }
  CJet T(const CJet& f) const { return along(e[0], f); }
  CJet m(const CJet& f) const { return (along(e[1], f) - along(e[2], f) * kI) * Complex(kR2); }
  CJet mb(const CJet& f) const { return (along(e[1], f) + along(e[2], f) * kI) * Complex(kR2); }
};

Complex nan_complex() {
  const double n = std::numeric_limits<double>::quiet_NaN();
  return {n, n};
}

void require_unit(const Jet& norm, const Point& p) {
  if (std::abs(std::abs(norm.value()) - 1.0) > 1e-9)
    fail(ErrorCode::NotUnitLength, "vector field has |g(V,V)| = " + std::to_string(std::abs(norm.value())) +
                                       " at (r=" + std::to_string(p.r) + ", theta=" + std::to_string(p.theta) + ")");
}

}  // namespace

double KinematicData::reassembly_residual() const {
  const double half = 0.5 * div_T;
  const std::array<std::array<double, 2>, 2> rebuilt{{{half + sigma1, sigma2 - 0.5 * omega},
                                                      {sigma2 + 0.5 * omega, half - sigma1}}};
  double out = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) out = std::max(out, std::abs(rebuilt[i][j] - D[i][j]));
  return out;
}

double KinematicData::shear_norm() const { return std::hypot(sigma1, sigma2); }

SpinCoefficients SpinJets::values(const Point& p) const {
  return {kappa.value(), rho.value(), sigma.value(), epsilon.value(), beta.value(), p};
}

KinematicData kinematics(const Geometry& geo, const FrameArray& e) {
  const ConnectionJets c = frame_connection(geo, e);
  KinematicData k;
  k.point = geo.point();
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) k.D[i][j] = c[i + 1][0][j + 1].value();
  k.div_T = k.D[0][0] + k.D[1][1];
  k.omega = k.D[1][0] - k.D[0][1];
  k.omega_bracket = frame_twist(c).value();
  k.sigma1 = 0.5 * (k.D[0][0] - k.D[1][1]);
  k.sigma2 = 0.5 * (k.D[0][1] + k.D[1][0]);
  k.geodesic = std::hypot(c[0][0][1].value(), c[0][0][2].value());
  return k;
}

KinematicData kinematics(const MetricSpec& spec, const Point& p) {
  const FieldJets fj = field_jets(spec, p, 1);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  return kinematics(geo, canonical_frame_jets(fj).as_array());
}

SpinJets spin_jets(const Geometry& geo, const FrameArray& e) {
  const ConnectionJets c = frame_connection(geo, e);
  SpinJets s;
  s.kappa = -contract(c, kT, kT, kM);
  s.rho = -contract(c, kMb, kT, kM);
  s.sigma = -contract(c, kM, kT, kM);
  s.epsilon = contract(c, kT, kM, kMb);
  s.beta = contract(c, kM, kM, kMb);
  return s;
}

SpinCoefficients spin_coefficients(const MetricSpec& spec, const Point& p) {
  const FieldJets fj = field_jets(spec, p, 1);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  return spin_jets(geo, canonical_frame_jets(fj).as_array()).values(p);
}

double StructureResiduals::max_structure() const {
  double out = 0.0;
  for (const Complex& z : {s1, s2, s3, s5, s4, bid1, bid2}) out = std::max(out, std::abs(z));
  for (std::size_t a = 0; a < 3; ++a) out = std::max({out, lb1[a], lb2[a]});
  return out;
}

double StructureResiduals::max_killing() const {
  return std::max({std::abs(lb1_rho), std::abs(lb2_rho), std::abs(t_omega), std::abs(ric_tt), std::abs(ric_mm),
                   std::abs(ric2)});
}

StructureResiduals structure_residuals(const Geometry& geo, const FrameArray& e) {
  if (geo.metric().order < 3) fail(ErrorCode::JetOrder, "structure equations need metric jets of order 3");
  const ConnectionJets c = frame_connection(geo, e);
  const SpinJets sp = spin_jets(geo, e);
  const CJet &ka = sp.kappa, &rho = sp.rho, &si = sp.sigma, &ep = sp.epsilon, &be = sp.beta;
  const CJet kab = conj(ka), rhob = conj(rho), sib = conj(si), beb = conj(be);

  std::array<std::array<Jet, 3>, 3> ric;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) ric[i][j] = geo.ric(e[i], e[j]);
  const CJet Rtt = ric_c(ric, kT, kT), Rtm = ric_c(ric, kT, kM), Rtmb = ric_c(ric, kT, kMb);
  const CJet Rmm = ric_c(ric, kM, kM), Rmbmb = ric_c(ric, kMb, kMb), Rmmb = ric_c(ric, kM, kMb);

  const FrameDerivs d{geo, e};
  StructureResiduals out;
  out.point = geo.point();

  out.s1 = (d.T(rho) - d.mb(ka) - (ka * kab + si * sib + rho * rho + ka * beb + 0.5 * Rtt)).value();
  out.s2 = (d.T(si) - d.m(ka) - (ka * ka + 2.0 * si * ep + si * (rho + rhob) - ka * be + Rmm)).value();
  out.s3 = (d.m(rho) - d.mb(si) - (2.0 * si * beb + (rhob - rho) * ka + Rtm)).value();
  out.s5 = (d.T(be) - d.m(ep) - (si * (kab - beb) + ka * (ep - rhob) + be * (ep + rhob) - Rtm)).value();
  out.s4 = (d.m(beb) + d.mb(be) -
            (si * sib - rho * rhob - 2.0 * be * beb + (rho - rhob) * ep - Rmmb + 0.5 * Rtt))
               .value();

  // Brackets as complex coordinate vectors.
  const VecJet btx = geo.bracket(e[0], e[1]), bty = geo.bracket(e[0], e[2]), bxy = geo.bracket(e[1], e[2]);
  const Complex k0 = ka.value(), r0 = rho.value(), s0 = si.value(), e0 = ep.value(), b0 = be.value();
  for (int a = 0; a < 3; ++a) {
    const double T = e[0][a].value(), X = e[1][a].value(), Y = e[2][a].value();
    const Complex m = kR2 * Complex(X, -Y), mb = kR2 * Complex(X, Y);
    const Complex tm = kR2 * Complex(btx[a].value(), -bty[a].value());
    out.lb1[a] = std::abs(tm - (k0 * T + (e0 + std::conj(r0)) * m + s0 * mb));
    const Complex mmb = kI * bxy[a].value();
    out.lb2[a] = std::abs(mmb - ((std::conj(r0) - r0) * T + std::conj(b0) * m - b0 * mb));
  }

  out.bid1 = (d.T(Rtm) - 0.5 * d.m(Rtt) + d.mb(Rmm) -
              (ka * (Rtt - Rmmb) + (ep + 2.0 * rho + rhob) * Rtm + si * Rtmb - (kab + 2.0 * beb) * Rmm))
                 .value();
  out.bid2 = (d.m(Rtmb) + d.mb(Rtm) - d.T(Rmmb - 0.5 * Rtt) -
              ((rho + rhob) * (Rtt - Rmmb) - sib * Rmm - si * Rmbmb - (2.0 * kab + beb) * Rtm -
               (2.0 * ka + be) * Rtmb))
                 .value();

  const CJet Trho = d.T(rho), mrho = d.m(rho), mbrho = d.mb(rho);
  out.lb1_rho = (d.T(mrho) - d.m(Trho) - (ka * Trho + (ep + rhob) * mrho + si * mbrho)).value();
  out.lb2_rho = (d.m(mbrho) - d.mb(mrho) - ((rhob - rho) * Trho + beb * mrho - be * mbrho)).value();

  const Jet w = frame_twist(c);
  out.t_omega = geo.apply(e[0], w).value();
  out.ric_tt = Rtt.value().real() - 0.5 * w.value() * w.value();
  out.ric_mm = Rmm.value();
  const Jet divY = c[0][2][0] * (geo.signature() == Signature::Riemannian ? 1.0 : -1.0) + c[1][2][1];
  const Jet Ydiv = geo.apply(e[2], divY);
  out.ric2 = Ydiv.value() + divY.value() * divY.value() +
             0.5 * (geo.scalar().value() + 0.5 * w.value() * w.value());
  return out;
}

StructureResiduals structure_residuals(const MetricSpec& spec, const Point& p) {
  const FieldJets fj = field_jets(spec, p, 3);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  return structure_residuals(geo, canonical_frame_jets(fj).as_array());
}

FrameArray adapted_frame(const Geometry& geo, const VecJet& v, const FrameJets& canonical) {
  const Jet vv = geo.inner(v, v);
  const double s = vv.value() < 0.0 ? -1.0 : 1.0;
  VecJet x = canonical.X - scaled(s * geo.inner(canonical.X, v), v);
  x = scaled(1.0 / sqrt(geo.inner(x, x)), x);
  VecJet y = canonical.Y - scaled(s * geo.inner(canonical.Y, v), v) - scaled(geo.inner(canonical.Y, x), x);
  y = scaled(1.0 / sqrt(geo.inner(y, y)), y);
  return {v, x, y};
}

KillingReport killing_test(const MetricSpec& spec, const VectorField& field, const std::vector<Point>& grid) {
  if (grid.empty()) fail(ErrorCode::EmptyGrid, "no points for the Killing test");
  KillingReport rep;
  for (const Point& p : grid) {
    const FieldJets fj = field_jets(spec, p, 2);
    const Geometry geo(metric_jets(fj, spec.signature, p));
    const VecJet v = field(p.r, p.theta, 2);
    require_unit(geo.inner(v, v), p);
    const FrameArray e = adapted_frame(geo, v, canonical_frame_jets(fj));
    const KinematicData k = kinematics(geo, e);
    rep.max_geodesic = std::max(rep.max_geodesic, k.geodesic);
    rep.max_div = std::max(rep.max_div, std::abs(k.div_T));
    rep.max_shear = std::max(rep.max_shear, k.shear_norm());
    const MatJet lie = geo.lie_metric(v);
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        double acc = 0.0;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b) acc += e[i][a].value() * e[j][b].value() * lie[a][b].value();
        rep.max_lie = std::max(rep.max_lie, std::abs(acc));
      }
    ++rep.points;
  }
  return rep;
}

KillingReport killing_test(const MetricSpec& spec, const std::vector<Point>& grid) {
  const VectorField t = [](double, double, int order) {
    return VecJet{Jet(1.0, order), Jet(0.0, order), Jet(0.0, order)};
  };
  return killing_test(spec, t, grid);
}

double RotationCheck::max_residual() const {
  return std::max({kappa_residual, sigma_residual, rho_residual, epsilon_residual, beta_residual});
}

RotationCheck rotate_frame(const MetricSpec& spec, const Point& p, const ScalarField& theta_fn) {
  const FieldJets fj = field_jets(spec, p, 2);
  const Geometry geo(metric_jets(fj, spec.signature, p));
  const FrameJets f = canonical_frame_jets(fj);
  const Jet th = theta_fn(p, 2);
  const Jet c = cos(th), s = sin(th);
  const FrameArray base = f.as_array();
  const FrameArray rot{f.T, scaled(c, f.X) + scaled(s, f.Y), scaled(c, f.Y) - scaled(s, f.X)};

  RotationCheck out;
  out.base = spin_jets(geo, base).values(p);
  out.rotated = spin_jets(geo, rot).values(p);

  const double Tth = geo.apply(f.T, th).value();
  const Complex mth = kR2 * Complex(geo.apply(f.X, th).value(), -geo.apply(f.Y, th).value());
  const Complex ph = std::exp(kI * th.value());
  out.predicted = out.base;
  out.predicted.kappa = ph * out.base.kappa;
  out.predicted.sigma = ph * ph * out.base.sigma;
  out.predicted.rho = out.base.rho;
  out.predicted.epsilon = out.base.epsilon + kI * Tth;
  out.predicted.beta = ph * (out.base.beta + kI * mth);

  out.kappa_residual = std::abs(out.rotated.kappa - out.predicted.kappa);
  out.sigma_residual = std::abs(out.rotated.sigma - out.predicted.sigma);
  out.rho_residual = std::abs(out.rotated.rho - out.predicted.rho);
  out.epsilon_residual = std::abs(out.rotated.epsilon - out.predicted.epsilon);
  out.beta_residual = std::abs(out.rotated.beta - out.predicted.beta);
  return out;
}

ConformalCheck conformal_rescale_check(const MetricSpec& spec, const ScalarField& f, const Point& p,
                                       const VectorField* v) {
  const FieldJets fj = field_jets(spec, p, 2);
  const MetricJets mj = metric_jets(fj, spec.signature, p);
  const Geometry geo(mj);
  const FrameJets canon = canonical_frame_jets(fj);
  FrameArray e = canon.as_array();
  if (v) {
    const VecJet vv = (*v)(p.r, p.theta, 2);
    require_unit(geo.inner(vv, vv), p);
    e = adapted_frame(geo, vv, canon);
  }
  const Jet fjet = f(p, 2);
  const Geometry tilde(conformal_metric(mj, fjet));
  const Jet shrink = exp(-fjet);
  const FrameArray et{scaled(shrink, e[0]), scaled(shrink, e[1]), scaled(shrink, e[2])};

  const KinematicData k = kinematics(geo, e);
  const KinematicData kt = kinematics(tilde, et);
  ConformalCheck out;
  out.scale = shrink.value();
  out.sigma = Complex(-k.sigma1, k.sigma2);
  out.sigma_tilde = Complex(-kt.sigma1, kt.sigma2);
  out.omega = k.omega;
  out.omega_tilde = kt.omega;
  out.sigma_ratio = out.sigma == Complex(0.0) ? nan_complex() : out.sigma_tilde / out.sigma;
  out.omega_ratio = out.omega == 0.0 ? std::numeric_limits<double>::quiet_NaN() : out.omega_tilde / out.omega;
  out.sigma_residual = std::abs(out.sigma_tilde - out.scale * out.sigma);
  out.omega_residual = std::abs(out.omega_tilde - out.scale * out.omega);
  return out;
}

}  // namespace killing3
