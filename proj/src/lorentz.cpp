#include "killing3/lorentz.hpp"

#include <algorithm>
#include <cmath>

#include "killing3/curvature.hpp"
#include "killing3/geometry.hpp"

namespace killing3 {

double SignaturePair::flip_residual(const Point& p) const {
  const Sym3 gr = metric_components(riemannian, p);
  const Sym3 gl = metric_components(lorentzian, p);
  const FieldJets f = field_jets(riemannian, p, 0);
  const double phi = f.phi.value();
  const Vec3 tf{{1.0, -f.k.value(), -phi * f.h.value()}};
  double out = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) out = std::max(out, std::abs(gl(i, j) - (gr(i, j) - 2.0 * tf[i] * tf[j])));
  return out;
}

double SignaturePair::unit_timelike_residual(const Point& p) const {
  return std::abs(metric_components(lorentzian, p)(0, 0) + 1.0);
}

SignaturePair to_lorentz(const MetricSpec& spec) {
  if (spec.signature == Signature::Lorentzian) fail(ErrorCode::AlreadyLorentzian, "spec is already Lorentzian");
  SignaturePair pair{spec, spec};
  pair.lorentzian.signature = Signature::Lorentzian;
  return pair;
}

double LorentzRelations::max_residual() const { return std::max({res_ric_tt, res_scalar, res_gauss}); }

LorentzRelations lorentz_relations_check(const SignaturePair& pair, const Point& p) {
  const CurvatureScalars r = curvature_scalars(pair.riemannian, p);
  const CurvatureScalars l = curvature_scalars(pair.lorentzian, p);
  LorentzRelations out;
  out.point = p;
  out.S_R = r.S;
  out.S_L = l.S;
  out.ric_tt_R = r.ric_TT();
  out.ric_tt_L = l.ric_TT();
  out.res_ric_tt = std::abs(out.ric_tt_L - out.ric_tt_R);
  out.res_scalar = std::abs(out.S_L - out.S_R - 2.0 * out.ric_tt_R);
  out.res_gauss = gauss_residual(pair.lorentzian, p);
  return out;
}

LorentzCompleteness lorentz_completeness(const SignaturePair& pair, double r_max, std::size_t n_r,
                                         std::size_t n_theta, double r_min, double tol_zero) {
  LorentzCompleteness out;
  out.riemannian = curvature_profile(pair.riemannian, r_max, n_r, n_theta, r_min);
  out.lorentzian = curvature_profile(pair.lorentzian, r_max, n_r, n_theta, r_min);
  for (std::size_t i = 0; i < out.riemannian.inf_values.size(); ++i)
    out.max_disagreement =
        std::max(out.max_disagreement, std::abs(out.riemannian.inf_values[i] - out.lorentzian.inf_values[i]));
  out.verdict = completeness_verdict(out.lorentzian, tol_zero);
  return out;
}

}  // namespace killing3
