#pragma once

// Canonical metrics g = (T^b)^2 + dr^2 + phi^2 dtheta^2 with T = d/dt a unit
// Killing field, T^b = dt - phi h dtheta - k dr, built from three scalar
// fields (phi, h, k) of (r, theta).

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "killing3/jet.hpp"
#include "killing3/tensor.hpp"

namespace killing3 {

struct Point {
  double r = 0.0;
  double theta = 0.0;
};

enum class Provenance { Analytic, GridSampled };

/// A scalar function of (r, theta) that can be evaluated as a jet.
class ScalarField {
 public:
  using Evaluator = std::function<Jet(double r, double theta, int order)>;
  using Formula = std::function<Jet(const Jet& r, const Jet& theta)>;

  ScalarField();  // identically zero
  ScalarField(Evaluator eval, int max_order, Provenance provenance);

  static ScalarField constant(double c);
  /// Exact jets from a formula written in jet arithmetic.
  static ScalarField analytic(Formula formula);

  /// Throws Error(JetOrder) when order exceeds max_order().
  Jet operator()(double r, double theta, int order = kMaxJetOrder) const;
  Jet operator()(const Point& p, int order = kMaxJetOrder) const { return (*this)(p.r, p.theta, order); }

  int max_order() const { return max_order_; }
  Provenance provenance() const { return provenance_; }

 private:
  Evaluator eval_;
  int max_order_ = kMaxJetOrder;
  Provenance provenance_ = Provenance::Analytic;
};

struct MetricSpec {
  ScalarField phi;
  ScalarField h;
  ScalarField k;
  Signature signature = Signature::Riemannian;
  std::string name;
  std::map<std::string, double> params;
};

/// Frame T = d_t, X = h d_t + (1/phi) d_theta, Y = k d_t + d_r in (t, r, theta) components.
struct FrameAt {
  Vec3 T, X, Y;
  Point point;

  std::array<Vec3, 3> as_array() const { return {T, X, Y}; }
};

/// phi values at or below this are treated as a coordinate degeneracy.
inline constexpr double kPhiCutoff = 1e-8;

/// Coordinate components g_ij in the basis (d_t, d_r, d_theta). Throws Error(Domain) if phi <= 1e-8.
Sym3 metric_components(const MetricSpec& spec, const Point& p);

FrameAt canonical_frame(const MetricSpec& spec, const Point& p);

/// Known exact metrics: flat, hopf (R), nil (omega0), hyperbolic, cf_family (B, C, omega0, sign, ...).
MetricSpec catalog(const std::string& name, const std::map<std::string, double>& params = {});

/// Parameter keys accepted by a catalog entry; throws UnknownCatalogName.
std::vector<std::string> catalog_keys(const std::string& name);

/// Rectangular samples of (phi, h, k) on a tensor grid, theta varying fastest.
struct GridData {
  std::vector<double> r;
  std::vector<double> theta;
  std::vector<double> phi, h, k;  // index i_r * theta.size() + i_theta

  std::size_t index(std::size_t ir, std::size_t it) const { return ir * theta.size() + it; }
};

GridData sample_grid(const MetricSpec& spec, double r_min, double r_max, std::size_t n_r, double theta_min,
                     double theta_max, std::size_t n_theta);

/// CSV with header r,theta,phi,h,k; rows ordered by r then theta.
GridData read_grid_csv(const std::string& text);
std::string write_grid_csv(const GridData& grid);

/// Spec whose fields are local polynomial interpolants of grid samples.
MetricSpec grid_spec(const GridData& grid, Signature signature = Signature::Riemannian);

/// Field backed by grid samples; derivatives come from a 6x6 local Lagrange stencil.
ScalarField grid_field(std::shared_ptr<const GridData> grid, std::vector<double> GridData::* values);

const char* to_string(Signature s);

}  // namespace killing3
