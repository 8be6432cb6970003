#pragma once

// Curvature of canonical metrics, along two routes: coordinate Christoffel
// symbols (Ricci, scalar curvature, Riemann) and the frame/twist assembly of
// the Ricci operator from (w, S, X(w), Y(w)).

#include <array>
#include <vector>

#include "killing3/metric.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

using Christoffels = std::array<std::array<std::array<double, 3>, 3>, 3>;  // [a][b][c] = Gamma^a_bc

Christoffels christoffels(const MetricSpec& spec, const Point& p);

/// Frame components R(e_a, e_b, e_c, e_d), e = (T, X, Y).
Riemann4 riemann(const MetricSpec& spec, const Point& p);

struct CurvaturePacket {
  Sym3 ricci;         // Ric(e_i, e_j), coordinate route
  double scalar_S = 0.0;
  Sym3 ric_operator;  // Ricci endomorphism in the frame (equals ricci when Riemannian)
  Sym3 ham1;          // assembled from w, S, X(w), Y(w); meaningful when T is Killing
  double ham1_residual = 0.0;
  std::array<double, 3> spectrum{};  // closed forms: lambda1 >= lambda2, lambda3
  std::array<double, 3> direct_spectrum{};  // sym_eig3(ric_operator), ascending
  double delta = 0.0;
  double omega = 0.0;
  double X_omega = 0.0, Y_omega = 0.0;
  Point point;
};

/// Riemannian signature only (the Ricci endomorphism is not symmetric otherwise).
CurvaturePacket curvature_packet(const MetricSpec& spec, const Point& p);

/// Closed-form eigenvalues (lambda1, lambda2, lambda3) and the discriminant.
std::array<double, 3> closed_form_spectrum(double S, double omega, double grad_omega_sq, double* delta = nullptr);

/// S and frame Ricci components for either signature.
struct CurvatureScalars {
  double S = 0.0;
  Sym3 ricci;  // Ric(e_i, e_j)
  double ric_TT() const { return ricci(0, 0); }
};

CurvatureScalars curvature_scalars(const MetricSpec& spec, const Point& p);

struct RicciOfT {
  double tt = 0.0, tx = 0.0, ty = 0.0;
  double norm_sq = 0.0;
  Point point;
};

RicciOfT ricci_of_t(const MetricSpec& spec, const Point& p);

/// |-phi_rr / phi - (S + Ric(T,T)) / 2|.
double gauss_residual(const MetricSpec& spec, const Point& p);

struct HamiltonPoint {
  Point point;
  double S = 0.0;
  double rhs = 0.0;          // 2|Ric(T)|^2 / Ric(T,T) - Ric(T,T)
  double rhs_twice = 0.0;    // 2|grad w|^2 / w^2 + w^2
  double rhs_prelim = 0.0;   // |grad w|^2 / w^2 + w^2 / 2
  bool holds = false;
  bool holds_twice = false;
  bool holds_prelim = false;
};

struct HamiltonResult {
  std::vector<HamiltonPoint> points;
  bool all_hold = true;
  bool all_hold_twice = true;
};

/// Throws TwistZero at a point where w vanishes.
HamiltonResult hamilton_inequality(const MetricSpec& spec, const std::vector<Point>& grid);

}  // namespace killing3
