#pragma once

// Conformally flat metrics with a unit Killing field: the twist solves
// w_rr = -w (w^2 + 2B) / 2 with energy w_r^2 + (w^2 + 2B)^2 / 4 = C + B^2,
// and phi = h(theta) w_r on one monotone arc of w.

#include <array>
#include <optional>
#include <vector>

#include "killing3/metric.hpp"

namespace killing3 {

struct FamilyParams {
  double B = 0.0;
  double C = 1.0;
  double omega0 = 0.0;
  int omega_r0_sign = 1;
  ScalarField h_theta = ScalarField::constant(1.0);  // function of theta only, positive
  /// Range of r; unset means the monotone arc of w containing r = 0.
  std::optional<double> r_min, r_max;
};

struct OmegaSample {
  double r, omega, omega_r, omega_rr, omega_rrr;
};

/// (w, w_r, w_rr, w_rrr, w_rrrr) from (w, w_r) through the ODE.
std::array<double, 5> omega_derivatives(double B, double omega, double omega_r);

double family_energy(double B, double omega, double omega_r);

/// C + B^2 >= (w0^2 + 2B)^2 / 4.
bool admissible(double B, double C, double omega0);

class OmegaSolution {
 public:
  double B = 0.0, C = 0.0;
  std::vector<OmegaSample> samples;  // ascending r, one per accepted step
  double energy_drift = 0.0;         // max |E - E0| / |E0| (absolute when E0 = 0)
  std::optional<double> period;
  std::vector<double> turning_points;  // r where w_r = 0
  bool equilibrium = false;            // w constant

  double r_lo() const { return samples.front().r; }
  double r_hi() const { return samples.back().r; }
  /// Dense evaluation: re-integrates from the nearest stored node. Throws Domain outside the range.
  std::array<double, 5> at(double r) const;
};

/// Integrates over [r_min, r_max] (default [-40, 40]) from r = 0.
OmegaSolution solve_omega_ode(const FamilyParams& params);

/// Monotone arc of w containing r = 0 (the sign of w_r(0) picks the side when 0 is a turning point).
std::pair<double, double> monotone_arc(const OmegaSolution& sol, int sign);

/// phi = |h(theta) w_r|, twist field w(r), k = 0.
MetricSpec build_cf_metric(const FamilyParams& params);

/// |4|Ric(T)|^2 - 3 Ric(T,T)^2 + 2B Ric(T,T) - C|.
double wpde_residual(const MetricSpec& spec, const Point& p, double B, double C);

}  // namespace killing3
