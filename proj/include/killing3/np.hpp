#pragma once

// Spin coefficients of the complex frame {T, m, m-bar}, m = (X - iY)/sqrt(2),
// kinematics of T (divergence, twist, shear), structure-equation residuals,
// the Killing characterization, gauge rotations and conformal rescaling.

#include <array>
#include <functional>
#include <vector>

#include "killing3/geometry.hpp"
#include "killing3/metric.hpp"

namespace killing3 {

struct KinematicData {
  double div_T = 0.0;
  double omega = 0.0;          // from the antisymmetric part of D
  double omega_bracket = 0.0;  // g(T, [X, Y])
  double sigma1 = 0.0, sigma2 = 0.0;
  double geodesic = 0.0;  // |nabla_T T|
  std::array<std::array<double, 2>, 2> D{};  // D[i][j] = g(nabla_{e_i} T, e_j), e = (X, Y)
  Point point;

  /// D minus (div/2) I + [[s1, s2], [s2, -s1]] + (w/2) [[0, -1], [1, 0]].
  double reassembly_residual() const;
  double shear_norm() const;
};

struct SpinCoefficients {
  Complex kappa, rho, sigma, epsilon, beta;
  Point point;
};

struct SpinJets {
  CJet kappa, rho, sigma, epsilon, beta;
  SpinCoefficients values(const Point& p) const;
};

/// Orthonormal frame jets (e_0 = the unit field under study).
using FrameArray = std::array<VecJet, 3>;

KinematicData kinematics(const Geometry& geo, const FrameArray& e);
KinematicData kinematics(const MetricSpec& spec, const Point& p);

SpinJets spin_jets(const Geometry& geo, const FrameArray& e);
SpinCoefficients spin_coefficients(const MetricSpec& spec, const Point& p);

struct StructureResiduals {
  Complex s1, s2, s3, s5, s4;
  Vec3 lb1, lb2;  // |component| of the bracket residual vectors
  Complex bid1, bid2;
  // Identities of a unit Killing field in its canonical frame.
  Complex lb1_rho, lb2_rho;  // the bracket relations applied to rho
  double t_omega = 0.0;
  double ric_tt = 0.0;  // Ric(T,T) - w^2/2
  Complex ric_mm;
  double ric2 = 0.0;  // Y(div Y) + (div Y)^2 + (S + w^2/2)/2
  Point point;

  /// Largest |residual| among S1-S5, LB1, LB2, bid, bid2 (frame-independent identities).
  double max_structure() const;
  double max_killing() const;
  double max_all() const { return std::max(max_structure(), max_killing()); }
};

/// Needs metric jets of order 3.
StructureResiduals structure_residuals(const Geometry& geo, const FrameArray& e);
StructureResiduals structure_residuals(const MetricSpec& spec, const Point& p);

/// Vector field in coordinate components, as jets in (r, theta).
using VectorField = std::function<VecJet(double r, double theta, int order)>;

/// Orthonormal frame with e_0 = v: Gram-Schmidt of the canonical X, Y against v.
FrameArray adapted_frame(const Geometry& geo, const VecJet& v, const FrameJets& canonical);

struct KillingReport {
  double max_geodesic = 0.0, max_div = 0.0, max_shear = 0.0, max_lie = 0.0;
  std::size_t points = 0;

  double max_kinematic() const { return std::max({max_geodesic, max_div, max_shear}); }
  /// Both routes below tol, or both above.
  bool consistent(double tol) const { return (max_kinematic() < tol) == (max_lie < tol); }
};

/// Throws NotUnitLength if |g(v,v)| differs from 1 by more than 1e-9.
KillingReport killing_test(const MetricSpec& spec, const std::vector<Point>& grid);
KillingReport killing_test(const MetricSpec& spec, const VectorField& v, const std::vector<Point>& grid);

struct RotationCheck {
  SpinCoefficients base, rotated, predicted;
  double kappa_residual = 0.0, sigma_residual = 0.0, rho_residual = 0.0, epsilon_residual = 0.0,
         beta_residual = 0.0;
  double max_residual() const;
};

/// X* = cos(t) X + sin(t) Y, Y* = -sin(t) X + cos(t) Y with t = theta_fn.
RotationCheck rotate_frame(const MetricSpec& spec, const Point& p, const ScalarField& theta_fn);

struct ConformalCheck {
  Complex sigma, sigma_tilde;
  double omega = 0.0, omega_tilde = 0.0;
  double scale = 1.0;  // e^{-f}
  Complex sigma_ratio;  // NaN when sigma = 0
  double omega_ratio = 0.0;  // NaN when omega = 0
  double sigma_residual = 0.0;  // |sigma~ - e^{-f} sigma|
  double omega_residual = 0.0;
};

/// Shear and twist of e^{-f} T in e^{2f} g; v overrides T when given.
ConformalCheck conformal_rescale_check(const MetricSpec& spec, const ScalarField& f, const Point& p,
                                       const VectorField* v = nullptr);

}  // namespace killing3
