#include "killing3/completeness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <boost/numeric/odeint.hpp>

#include "killing3/curvature.hpp"
#include "killing3/geometry.hpp"

namespace killing3 {

namespace odeint = boost::numeric::odeint;

CurvatureProfile profile_from_samples(const std::vector<double>& radii, const std::vector<double>& minima) {
  if (radii.empty() || radii.size() != minima.size()) fail(ErrorCode::EmptyProfile, "profile has no samples");
  CurvatureProfile prof;
  prof.radii = radii;
  prof.inf_values.resize(radii.size());
  double running = INFINITY;
  for (std::size_t i = radii.size(); i-- > 0;) {
    running = std::min(running, minima[i]);
    prof.inf_values[i] = running;
  }
  const std::size_t q = std::min((radii.size() * 3) / 4, radii.size() - 1);
  prof.tail_estimate = prof.inf_values[q];
  const auto [lo, hi] = std::minmax_element(minima.begin() + q, minima.end());
  prof.tail_spread = *hi - *lo;
  const std::size_t n = radii.size() - q;
  if (n >= 2) {
    double mr = 0.0, mk = 0.0;
    for (std::size_t i = q; i < radii.size(); ++i) mr += radii[i] / n, mk += minima[i] / n;
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = q; i < radii.size(); ++i) {
      sxy += (radii[i] - mr) * (minima[i] - mk);
      sxx += (radii[i] - mr) * (radii[i] - mr);
    }
    prof.tail_slope = sxx > 0.0 ? sxy / sxx : 0.0;
  }
  return prof;
}

CurvatureProfile curvature_profile(const MetricSpec& spec, double r_max, std::size_t n_r, std::size_t n_theta,
                                   double r_min) {
  if (n_r < 1 || n_theta < 1) fail(ErrorCode::EmptyGrid, "profile needs at least one radius and one angle");
  if (!(r_max >= r_min)) fail(ErrorCode::BadParams, "r_max must not be below r_min");
  const double s = spec.signature == Signature::Riemannian ? 1.0 : -1.0;
  std::vector<double> radii, minima;
  for (std::size_t i = 0; i < n_r; ++i) {
    const double r = n_r == 1 ? r_min : r_min + (r_max - r_min) * static_cast<double>(i) / (n_r - 1);
    double lo = INFINITY;
    for (std::size_t j = 0; j < n_theta; ++j) {
      const double th = 2.0 * std::numbers::pi * static_cast<double>(j) / n_theta;
      const CurvatureScalars c = curvature_scalars(spec, {r, th});
      lo = std::min(lo, c.S + s * c.ric_TT());
    }
    radii.push_back(r);
    minima.push_back(lo);
  }
  CurvatureProfile prof = profile_from_samples(radii, minima);
  prof.n_theta = n_theta;
  return prof;
}

const char* to_string(CompletenessVerdict v) {
  switch (v) {
    case CompletenessVerdict::CompleteCriterion: return "CompleteCriterion";
    case CompletenessVerdict::IncompleteCriterion: return "IncompleteCriterion";
    case CompletenessVerdict::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

CompletenessVerdict completeness_verdict(const CurvatureProfile& profile, double tol_zero) {
  if (profile.inf_values.empty()) fail(ErrorCode::EmptyProfile, "empty curvature profile");
  if (profile.tail_estimate <= tol_zero) return CompletenessVerdict::CompleteCriterion;
  // A positive tail counts only if the window has settled: no downward drift, oscillation below the margin.
  const bool settled = profile.tail_slope >= -tol_zero && profile.tail_estimate - profile.tail_spread > tol_zero;
  if (settled) return CompletenessVerdict::IncompleteCriterion;
  return CompletenessVerdict::Inconclusive;
}

GeodesicState frame_initial_state(const MetricSpec& spec, const Point& p, double c, double a, double b) {
  const FrameAt f = canonical_frame(spec, p);
  GeodesicState st;
  st.r = p.r;
  st.theta = p.theta;
  st.velocity = c * f.T + a * f.X + b * f.Y;
  const Sym3 g = metric_components(spec, p);
  const Vec3 gv = g.to_mat() * st.velocity;
  st.conserved_c = gv[0];
  st.speed = dot(gv, st.velocity);
  return st;
}

namespace {

// Full geodesic (t, r, th, vt, vr, vth) followed by the quotient curve (r, th, vr, vth).
using State = std::array<double, 10>;

struct GeodesicRhs {
  const MetricSpec* spec;
  double c;  // conserved g(T, gamma')

  void operator()(const State& y, State& dy, double) const {
    const Point p{y[1], y[2]};
    const FieldJets fj = field_jets(*spec, p, 1);
    const Geometry geo(metric_jets(fj, spec->signature, p));
    for (int a = 0; a < 3; ++a) {
      dy[a] = y[3 + a];
      double acc = 0.0;
      for (int b = 0; b < 3; ++b)
        for (int d = 0; d < 3; ++d) acc += geo.christoffel(a, b, d).value() * y[3 + b] * y[3 + d];
      dy[3 + a] = -acc;
    }
    const Point q{y[6], y[7]};
    const FieldJets qj = field_jets(*spec, q, 1);
    const double phi = qj.phi.value(), phi_r = qj.phi.d_r(), phi_t = qj.phi.d_theta();
    const double w = (qj.k.d_theta() - (qj.phi * qj.h).d_r()) / phi;
    const double vr = y[8], vt = y[9];
    dy[6] = vr;
    dy[7] = vt;
    dy[8] = phi * phi_r * vt * vt + c * w * phi * vt;
    dy[9] = -2.0 * (phi_r / phi) * vr * vt - (phi_t / phi) * vt * vt - c * w * vr / phi;
  }
};

std::pair<double, double> invariants(const MetricSpec& spec, const State& y) {
  const Sym3 g = metric_components(spec, {y[1], y[2]});
  const Vec3 v{{y[3], y[4], y[5]}};
  const Vec3 gv = g.to_mat() * v;
  return {gv[0], dot(gv, v)};
}

constexpr double kMaxStep = 0.5;

}  // namespace

GeodesicResult integrate_geodesic(const MetricSpec& spec, const GeodesicState& init, double length, double step_tol,
                                  double projection_length) {
  if (!(length > 0.0) || !(step_tol > 0.0)) fail(ErrorCode::BadParams, "length and step_tol must be positive");
  State y{init.t, init.r, init.theta, init.velocity[0], init.velocity[1], init.velocity[2],
          init.r, init.theta, init.velocity[1], init.velocity[2]};
  const auto [c0, q0] = invariants(spec, y);
  if (std::abs(std::abs(q0) - 1.0) > 1e-9)
    fail(ErrorCode::NotUnitLength, "initial velocity has |g(v,v)| = " + std::to_string(std::abs(q0)));
  const GeodesicRhs rhs{&spec, c0};
  const double c_scale = std::max(std::abs(c0), 1.0);
  const double reject = 0.1 * step_tol;

  GeodesicResult res;
  auto record = [&](double s, const State& st, double cd, double qd) {
    GeodesicSample smp;
    smp.s = s;
    smp.state.t = st[0];
    smp.state.r = st[1];
    smp.state.theta = st[2];
    smp.state.velocity = Vec3{{st[3], st[4], st[5]}};
    const auto [c, q] = invariants(spec, st);
    smp.state.conserved_c = c;
    smp.state.speed = q;
    smp.c_drift = cd;
    smp.speed_drift = qd;
    smp.quotient_r = st[6];
    smp.quotient_theta = st[7];
    res.samples.push_back(smp);
  };
  record(0.0, y, 0.0, 0.0);

  auto stepper = odeint::make_controlled(step_tol, step_tol, odeint::runge_kutta_fehlberg78<State>());
  double s = 0.0, ds = 1e-2;
  bool tracking = projection_length > 0.0;
  try {
    while (s < length) {
      if (s + ds > length) ds = length - s;
      if (tracking && s < projection_length && s + ds > projection_length) ds = projection_length - s;
      State trial = y;
      double st = s, dst = ds;
      odeint::controlled_step_result outcome;
      try {
        outcome = stepper.try_step(rhs, trial, st, dst);
      } catch (const Error& e) {
        // An intermediate stage left the domain; only a vanishing step means the curve itself does.
        if (e.code() != ErrorCode::Domain && e.code() != ErrorCode::NonFinite) throw;
        ds *= 0.25;
        ++res.rejected_steps;
        if (ds < 1e-12) throw;
        continue;
      }
      if (outcome == odeint::fail) {
        ds = dst;
        ++res.rejected_steps;
        if (ds < 1e-14) fail(ErrorCode::StepFailure, "geodesic step size underflow at s = " + std::to_string(s));
        continue;
      }
      const auto [c, q] = invariants(spec, trial);
      const auto [cp, qp] = invariants(spec, y);
      if (std::abs(c - cp) / c_scale > reject || std::abs(q - qp) / std::abs(q0) > reject) {
        ds *= 0.5;
        ++res.rejected_steps;
        if (ds < 1e-14) fail(ErrorCode::StepFailure, "conserved-quantity rejection could not be met");
        continue;
      }
      y = trial;
      s = st;
      ds = std::min(dst, kMaxStep);
      const double cd = std::abs(c - c0) / c_scale, qd = std::abs(q - q0) / std::abs(q0);
      res.c_drift_max = std::max(res.c_drift_max, cd);
      res.speed_drift_max = std::max(res.speed_drift_max, qd);
      if (tracking) {
        res.projection_residual = std::max(res.projection_residual, std::hypot(y[1] - y[6], y[2] - y[7]));
        if (s >= projection_length) tracking = false;
      }
      if (!tracking) {
        // Re-seed the quotient curve so it cannot leave the domain on its own after the window.
        y[6] = y[1];
        y[7] = y[2];
        y[8] = y[4];
        y[9] = y[5];
      }
      for (double v : y)
        if (!std::isfinite(v) || std::abs(v) > 1e12) fail(ErrorCode::BlowUp, "geodesic state diverged");
      record(s, y, cd, qd);
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Domain || e.code() == ErrorCode::NonFinite)
      fail(ErrorCode::BlowUp, "geodesic left the admissible domain near s = " + std::to_string(s) + ": " + e.what());
    throw;
  }
  return res;
}

std::string trajectory_csv(const GeodesicResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "s,t,r,theta,vt,vr,vtheta,c_drift,speed_drift\n";
  for (const auto& smp : result.samples) {
    const auto& st = smp.state;
    out << smp.s << ',' << st.t << ',' << st.r << ',' << st.theta << ',' << st.velocity[0] << ',' << st.velocity[1]
        << ',' << st.velocity[2] << ',' << smp.c_drift << ',' << smp.speed_drift << '\n';
  }
  return out.str();
}

}  // namespace killing3
