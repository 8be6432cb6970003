#pragma once

// Completeness criterion on the quotient (lim inf of S + Ric(T,T) over
// |p| >= r) and geodesic integration with conserved-quantity monitoring.

#include <optional>
#include <string>
#include <vector>

#include "killing3/metric.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

struct CurvatureProfile {
  std::vector<double> radii;       // ascending
  std::vector<double> inf_values;  // inf over samples with r' >= radii[i]
  double tail_estimate = 0.0;
  double tail_spread = 0.0;  // max - min of the per-radius minima over the last quartile
  double tail_slope = 0.0;   // least-squares slope of those minima
  std::size_t n_theta = 0;
};

/// Samples S + Ric(T,T) (S - Ric(T,T) for Lorentzian specs) on [r_min, r_max] x [0, 2pi).
CurvatureProfile curvature_profile(const MetricSpec& spec, double r_max, std::size_t n_r, std::size_t n_theta,
                                   double r_min = 0.0);

/// Profile from externally computed samples (ascending radii with the per-radius minimum).
CurvatureProfile profile_from_samples(const std::vector<double>& radii, const std::vector<double>& minima);

enum class CompletenessVerdict { CompleteCriterion, IncompleteCriterion, Inconclusive };
const char* to_string(CompletenessVerdict v);

/// Evaluated on the hypothesis that the (r, theta) chart is global.
CompletenessVerdict completeness_verdict(const CurvatureProfile& profile, double tol_zero = 1e-6);

struct GeodesicState {
  double t = 0.0, r = 0.0, theta = 0.0;
  Vec3 velocity;             // (vt, vr, vtheta)
  double conserved_c = 0.0;  // g(T, gamma')
  double speed = 0.0;        // g(gamma', gamma')
};

/// Unit-speed initial state at p with velocity c T + a X + b Y.
GeodesicState frame_initial_state(const MetricSpec& spec, const Point& p, double c, double a, double b);

struct GeodesicSample {
  double s = 0.0;
  GeodesicState state;
  double c_drift = 0.0, speed_drift = 0.0;
  double quotient_r = 0.0, quotient_theta = 0.0;
};

struct GeodesicResult {
  std::vector<GeodesicSample> samples;  // one per accepted step
  double c_drift_max = 0.0;      // max |c - c0| / max(|c0|, 1)
  double speed_drift_max = 0.0;  // max |q - q0| / |q0|
  double projection_residual = 0.0;  // max (r, theta) gap to the quotient curve over s <= projection_length
  std::size_t rejected_steps = 0;
};

/// Integrates the geodesic equation together with the quotient curve
///   r'' = phi phi_r th'^2 + c w phi th',
///   th'' = -2 (phi_r/phi) r' th' - (phi_th/phi) th'^2 - c w r' / phi.
/// Throws BlowUp when the curve leaves the admissible domain and StepFailure on step underflow.
GeodesicResult integrate_geodesic(const MetricSpec& spec, const GeodesicState& init, double length,
                                  double step_tol = 1e-10, double projection_length = 20.0);

/// CSV with header s,t,r,theta,vt,vr,vtheta,c_drift,speed_drift.
std::string trajectory_csv(const GeodesicResult& result);

}  // namespace killing3
