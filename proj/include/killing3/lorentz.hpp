#pragma once

// Riemannian/Lorentzian pairs g_L = g_R - 2 T_flat^2 sharing the unit Killing field T.

#include "killing3/completeness.hpp"
#include "killing3/metric.hpp"

namespace killing3 {

struct SignaturePair {
  MetricSpec riemannian;
  MetricSpec lorentzian;  // same phi, h, k

  /// max |g_L - (g_R - 2 T_flat (x) T_flat)| over coordinate components.
  double flip_residual(const Point& p) const;
  /// |g_L(T, T) + 1|.
  double unit_timelike_residual(const Point& p) const;
};

/// Throws AlreadyLorentzian on a Lorentzian input.
SignaturePair to_lorentz(const MetricSpec& spec);

struct LorentzRelations {
  double S_R = 0.0, S_L = 0.0;
  double ric_tt_R = 0.0, ric_tt_L = 0.0;
  double res_ric_tt = 0.0;  // |Ric_L(T,T) - Ric_R(T,T)|
  double res_scalar = 0.0;  // |S_L - S_R - 2 Ric_R(T,T)|
  double res_gauss = 0.0;   // |-phi_rr/phi - (S_L - Ric_L(T,T)) / 2|
  Point point;

  double max_residual() const;
};

/// Both curvatures come from the coordinate Christoffel route with the respective signature.
LorentzRelations lorentz_relations_check(const SignaturePair& pair, const Point& p);

struct LorentzCompleteness {
  CurvatureProfile riemannian;  // S_R + Ric_R(T,T)
  CurvatureProfile lorentzian;  // S_L - Ric_L(T,T)
  double max_disagreement = 0.0;
  CompletenessVerdict verdict = CompletenessVerdict::Inconclusive;

  bool profiles_agree(double tol = 1e-8) const { return max_disagreement <= tol; }
};

LorentzCompleteness lorentz_completeness(const SignaturePair& pair, double r_max, std::size_t n_r = 64,
                                         std::size_t n_theta = 16, double r_min = 0.0, double tol_zero = 1e-6);

}  // namespace killing3
