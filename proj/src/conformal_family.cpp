#include "killing3/conformal_family.hpp"

#include <algorithm>
#include <cmath>
#include <boost/numeric/odeint.hpp>

#include "killing3/curvature.hpp"

namespace killing3 {

namespace odeint = boost::numeric::odeint;

namespace {

using State = std::array<double, 2>;

constexpr double kStepTol = 1e-13;
constexpr double kDriftReject = 1e-10;
constexpr double kDriftLimit = 1e-8;
constexpr double kDefaultHalfWidth = 40.0;

struct OmegaRhs {
  double B;
  void operator()(const State& x, State& dx, double) const {
    dx[0] = x[1];
    dx[1] = -0.5 * x[0] * (x[0] * x[0] + 2.0 * B);
  }
};

auto make_stepper() { return odeint::make_controlled(kStepTol, kStepTol, odeint::runge_kutta_fehlberg78<State>()); }

// Relative to e0, except near equilibrium where e0 itself is roundoff.
double relative_deviation(double e, double e0, double floor) { return std::abs(e - e0) / std::max(std::abs(e0), floor); }

// One direction from r = 0; samples are appended in integration order.
void integrate_leg(const OmegaRhs& rhs, State x, double r_end, double e0, double floor, std::vector<OmegaSample>& out,
                   double& drift) {
  auto stepper = make_stepper();
  const double dir = r_end >= 0.0 ? 1.0 : -1.0;
  double r = 0.0, dt = 1e-3 * dir;
  while ((r_end - r) * dir > 0.0) {
    if ((r + dt - r_end) * dir > 0.0) dt = r_end - r;
    State trial = x;
    double rt = r, dtt = dt;
    if (stepper.try_step(rhs, trial, rt, dtt) == odeint::fail) {
      dt = dtt;
      if (std::abs(dt) < 1e-14) fail(ErrorCode::StepFailure, "omega ODE step size underflow");
      continue;
    }
    const double dev = relative_deviation(family_energy(rhs.B, trial[0], trial[1]), e0, floor);
    if (dev > kDriftReject) {
      dt *= 0.5;
      if (std::abs(dt) < 1e-14) fail(ErrorCode::EnergyDriftExceeded, "energy drift rejection could not be met");
      continue;
    }
    x = trial;
    r = rt;
    dt = dtt;
    drift = std::max(drift, dev);
    const auto d = omega_derivatives(rhs.B, x[0], x[1]);
    out.push_back({r, d[0], d[1], d[2], d[3]});
  }
}

}  // namespace

std::array<double, 5> omega_derivatives(double B, double w, double wr) {
  const double wrr = -0.5 * w * (w * w + 2.0 * B);
  const double wrrr = -1.5 * w * w * wr - B * wr;
  const double wrrrr = -3.0 * w * wr * wr - 1.5 * w * w * wrr - B * wrr;
  return {w, wr, wrr, wrrr, wrrrr};
}

double family_energy(double B, double w, double wr) {
  const double q = w * w + 2.0 * B;
  return wr * wr + 0.25 * q * q;
}

bool admissible(double B, double C, double omega0) {
  const double q = omega0 * omega0 + 2.0 * B;
  return C + B * B >= 0.25 * q * q - 1e-14 * std::max(1.0, std::abs(C + B * B));
}

std::array<double, 5> OmegaSolution::at(double r) const {
  if (samples.empty() || r < r_lo() || r > r_hi())
    fail(ErrorCode::Domain, "r = " + std::to_string(r) + " outside the integrated omega range");
  auto it = std::lower_bound(samples.begin(), samples.end(), r, [](const OmegaSample& s, double x) { return s.r < x; });
  if (it == samples.end() || (it != samples.begin() && std::abs((it - 1)->r - r) < std::abs(it->r - r))) --it;
  State x{it->omega, it->omega_r};
  if (it->r != r) {
    auto stepper = make_stepper();
    const double span = r - it->r;
    odeint::integrate_adaptive(stepper, OmegaRhs{B}, x, it->r, r, span / 4.0);
  }
  return omega_derivatives(B, x[0], x[1]);
}

OmegaSolution solve_omega_ode(const FamilyParams& params) {
  const double B = params.B, C = params.C, w0 = params.omega0;
  if (!std::isfinite(B) || !std::isfinite(C) || !std::isfinite(w0))
    fail(ErrorCode::BadParams, "family parameters must be finite");
  if (params.omega_r0_sign != 1 && params.omega_r0_sign != -1) fail(ErrorCode::BadParams, "sign must be +1 or -1");
  if (!admissible(B, C, w0))
    fail(ErrorCode::InadmissibleParams, "C + B^2 < (omega0^2 + 2B)^2 / 4: no real omega_r at r = 0");
  const double q = w0 * w0 + 2.0 * B;
  const double wr0 = params.omega_r0_sign * std::sqrt(std::max(0.0, C + B * B - 0.25 * q * q));

  const double lo = std::min(params.r_min.value_or(-kDefaultHalfWidth), 0.0);
  const double hi = std::max(params.r_max.value_or(kDefaultHalfWidth), 0.0);

  OmegaSolution sol;
  sol.B = B;
  sol.C = C;
  const OmegaRhs rhs{B};
  const double e0 = family_energy(B, w0, wr0);
  const auto d0 = omega_derivatives(B, w0, wr0);
  sol.equilibrium = wr0 == 0.0 && std::abs(d0[2]) < 1e-15;

  std::vector<OmegaSample> left, right;
  double drift = 0.0;
  const double floor = 1e-14 * (1.0 + std::abs(C) + B * B + std::pow(w0, 4));
  integrate_leg(rhs, {w0, wr0}, lo, e0, floor, left, drift);
  integrate_leg(rhs, {w0, wr0}, hi, e0, floor, right, drift);
  std::reverse(left.begin(), left.end());
  sol.samples = std::move(left);
  sol.samples.push_back({0.0, d0[0], d0[1], d0[2], d0[3]});
  sol.samples.insert(sol.samples.end(), right.begin(), right.end());
  sol.energy_drift = drift;
  if (drift > kDriftLimit) fail(ErrorCode::EnergyDriftExceeded, "energy drift " + std::to_string(drift));

  if (sol.equilibrium) return sol;
  for (std::size_t i = 0; i + 1 < sol.samples.size(); ++i) {
    const auto& a = sol.samples[i];
    const auto& b = sol.samples[i + 1];
    if (a.omega_r == 0.0) {
      sol.turning_points.push_back(a.r);
      continue;
    }
    if (a.omega_r * b.omega_r >= 0.0) continue;
    double x0 = a.r, x1 = b.r;
    const double s0 = a.omega_r;
    for (int it = 0; it < 200 && x1 - x0 > 1e-15 * std::max(1.0, std::abs(x0)); ++it) {
      const double mid = 0.5 * (x0 + x1);
      const double v = sol.at(mid)[1];
      if (v == 0.0) {
        x0 = x1 = mid;
        break;
      }
      if ((v > 0.0) == (s0 > 0.0)) x0 = mid;
      else x1 = mid;
    }
    sol.turning_points.push_back(0.5 * (x0 + x1));
  }
  if (sol.samples.back().omega_r == 0.0) sol.turning_points.push_back(sol.samples.back().r);
  const auto& tp = sol.turning_points;
  if (tp.size() >= 3) {
    double acc = 0.0;
    for (std::size_t i = 0; i + 2 < tp.size(); ++i) acc += tp[i + 2] - tp[i];
    sol.period = acc / static_cast<double>(tp.size() - 2);
  }
  return sol;
}

std::pair<double, double> monotone_arc(const OmegaSolution& sol, int sign) {
  constexpr double kAtZero = 1e-12;
  double left = sol.r_lo(), right = sol.r_hi();
  bool zero_is_turning = false;
  for (double t : sol.turning_points) {
    if (std::abs(t) <= kAtZero) zero_is_turning = true;
    else if (t < 0.0) left = std::max(left, t);
    else right = std::min(right, t);
  }
  if (zero_is_turning) {
    if (sign > 0) left = 0.0;
    else right = 0.0;
  }
  return {left, right};
}

MetricSpec build_cf_metric(const FamilyParams& params) {
  if (params.r_min && params.r_max && !(*params.r_min < *params.r_max))
    fail(ErrorCode::BadParams, "r_min must be below r_max");
  auto sol = std::make_shared<const OmegaSolution>(solve_omega_ode(params));
  if (sol->equilibrium) fail(ErrorCode::PhiVanishes, "omega_r vanishes identically; phi = h omega_r is zero");

  double a = 0.0, b = 0.0;
  if (params.r_min) {
    a = *params.r_min;
    b = *params.r_max;
    for (double t : sol->turning_points)
      if (t >= a && t <= b)
        fail(ErrorCode::PhiVanishes, "omega_r vanishes at r = " + std::to_string(t) + " inside the requested range");
  } else {
    std::tie(a, b) = monotone_arc(*sol, params.omega_r0_sign);
  }
  const double s = sol->at(0.5 * (a + b))[1] > 0.0 ? 1.0 : -1.0;

  auto arc_check = [a, b](double r) {
    if (r < a || r > b)
      fail(ErrorCode::Domain, "r = " + std::to_string(r) + " outside the monotone arc [" + std::to_string(a) + ", " +
                                  std::to_string(b) + "]");
  };
  const ScalarField h_theta = params.h_theta;

  MetricSpec spec;
  spec.name = "cf_family";
  spec.params = {{"B", params.B}, {"C", params.C}, {"omega0", params.omega0}, {"sign", static_cast<double>(params.omega_r0_sign)}};
  spec.phi = ScalarField(
      [sol, s, h_theta, arc_check](double r, double theta, int order) {
        arc_check(r);
        const auto d = sol->at(r);
        const Jet wr = Jet::univariate_r({d[1], d[2], d[3], d[4]}, order);
        return s * (h_theta(r, theta, order) * wr);
      },
      kMaxJetOrder, Provenance::Analytic);
  // With k = 0 the twist is -(phi h)_r / phi; phi h = -s h(theta) w^2 / 2 gives twist w.
  spec.h = ScalarField(
      [sol, arc_check](double r, double, int order) {
        arc_check(r);
        const auto d = sol->at(r);
        const Jet w = Jet::univariate_r({d[0], d[1], d[2], d[3]}, order);
        const Jet wr = Jet::univariate_r({d[1], d[2], d[3], d[4]}, order);
        return -(w * w) / (2.0 * wr);
      },
      kMaxJetOrder, Provenance::Analytic);
  spec.k = ScalarField::constant(0.0);
  return spec;
}

double wpde_residual(const MetricSpec& spec, const Point& p, double B, double C) {
  const RicciOfT rt = ricci_of_t(spec, p);
  return std::abs(4.0 * rt.norm_sq - 3.0 * rt.tt * rt.tt + 2.0 * B * rt.tt - C);
}

}  // namespace killing3
