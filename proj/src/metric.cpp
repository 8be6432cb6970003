#include "killing3/metric.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "killing3/conformal_family.hpp"
#include "killing3/geometry.hpp"

namespace killing3 {

ScalarField::ScalarField() : ScalarField(constant(0.0)) {}

ScalarField::ScalarField(Evaluator eval, int max_order, Provenance provenance)
    : eval_(std::move(eval)), max_order_(max_order), provenance_(provenance) {}

ScalarField ScalarField::constant(double c) {
  return ScalarField([c](double, double, int order) { return Jet(c, order); }, kMaxJetOrder,
                     Provenance::Analytic);
}

ScalarField ScalarField::analytic(Formula formula) {
  return ScalarField(
      [f = std::move(formula)](double r, double theta, int order) {
        return f(Jet::variable_r(r, order), Jet::variable_theta(theta, order));
      },
      kMaxJetOrder, Provenance::Analytic);
}

Jet ScalarField::operator()(double r, double theta, int order) const {
  if (order > max_order_)
    fail(ErrorCode::JetOrder, "field supports derivatives up to order " + std::to_string(max_order_));
  Jet j = eval_(r, theta, order);
  return j.truncated(order);
}

const char* to_string(Signature s) { return s == Signature::Riemannian ? "riemannian" : "lorentzian"; }

Sym3 metric_components(const MetricSpec& spec, const Point& p) {
  const MetricJets mj = metric_jets(spec, p, 0);
  Sym3 g;
  for (std::size_t a = 0; a < 3; ++a)
    for (std::size_t b = a; b < 3; ++b) g.set(a, b, mj.g[a][b].value());
  return g;
}

FrameAt canonical_frame(const MetricSpec& spec, const Point& p) {
  const FrameJets f = canonical_frame_jets(field_jets(spec, p, 0));
  FrameAt out;
  out.point = p;
  for (std::size_t a = 0; a < 3; ++a) {
    out.T[a] = f.T[a].value();
    out.X[a] = f.X[a].value();
    out.Y[a] = f.Y[a].value();
  }
  return out;
}

namespace {

double require_param(const std::map<std::string, double>& params, const std::string& key, double fallback) {
  const auto it = params.find(key);
  const double v = it == params.end() ? fallback : it->second;
  if (!std::isfinite(v)) fail(ErrorCode::BadParams, "parameter " + key + " is not finite");
  return v;
}

void reject_unknown(const std::string& name, const std::map<std::string, double>& params) {
  const auto keys = catalog_keys(name);
  for (const auto& [key, value] : params) {
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ErrorCode::BadParams, "catalog '" + name + "' does not accept parameter '" + key + "'");
  }
}

}  // namespace

std::vector<std::string> catalog_keys(const std::string& name) {
  if (name == "flat" || name == "hyperbolic") return {};
  if (name == "hopf") return {"R"};
  if (name == "nil") return {"omega0"};
  if (name == "cf_family") return {"B", "C", "omega0", "sign", "r_min", "r_max", "h_sin"};
  fail(ErrorCode::UnknownCatalogName, "unknown catalog name '" + name + "'");
}

MetricSpec catalog(const std::string& name, const std::map<std::string, double>& params) {
  reject_unknown(name, params);
  MetricSpec spec;
  spec.name = name;
  spec.params = params;
  if (name == "flat") {
    spec.phi = ScalarField::constant(1.0);
  } else if (name == "hopf") {
    // Round S^3 of radius R with its Hopf field; r in (0, pi R / 2), theta period 2 pi.
    const double R = require_param(params, "R", 1.0);
    if (!(R > 0.0)) fail(ErrorCode::BadParams, "hopf radius R must be positive");
    spec.params["R"] = R;
    spec.phi = ScalarField::analytic([R](const Jet& r, const Jet&) { return 0.5 * R * sin(r * (2.0 / R)); });
    // Fixed by the twist oracle: omega = (k_theta - (phi h)_r) / phi = 2 / R.
    spec.h = ScalarField::analytic([R](const Jet& r, const Jet&) { return -tan(r * (1.0 / R)); });
  } else if (name == "nil") {
    const double w = require_param(params, "omega0", 1.0);
    spec.params["omega0"] = w;
    spec.phi = ScalarField::constant(1.0);
    spec.h = ScalarField::analytic([w](const Jet& r, const Jet&) { return -w * r; });
  } else if (name == "hyperbolic") {
    spec.phi = ScalarField::analytic([](const Jet& r, const Jet&) { return cosh(r); });
  } else {
    FamilyParams fp;
    fp.B = require_param(params, "B", 0.0);
    fp.C = require_param(params, "C", 1.0);
    fp.omega0 = require_param(params, "omega0", 0.0);
    const double sign = require_param(params, "sign", 1.0);
    if (sign != 1.0 && sign != -1.0) fail(ErrorCode::BadParams, "sign must be +1 or -1");
    fp.omega_r0_sign = static_cast<int>(sign);
    const double amp = require_param(params, "h_sin", 0.0);
    if (std::abs(amp) >= 1.0) fail(ErrorCode::BadParams, "h_sin must satisfy |h_sin| < 1 so h(theta) > 0");
    if (amp != 0.0)
      fp.h_theta = ScalarField::analytic([amp](const Jet&, const Jet& t) { return 1.0 + amp * sin(t); });
    if (params.count("r_min") != params.count("r_max"))
      fail(ErrorCode::BadParams, "r_min and r_max must be given together");
    if (params.count("r_min")) {
      fp.r_min = params.at("r_min");
      fp.r_max = params.at("r_max");
    }
    spec = build_cf_metric(fp);
    spec.params = params;
  }
  return spec;
}

GridData sample_grid(const MetricSpec& spec, double r_min, double r_max, std::size_t n_r, double theta_min,
                     double theta_max, std::size_t n_theta) {
  if (n_r < 2 || n_theta < 2) fail(ErrorCode::BadParams, "grid needs at least two nodes per axis");
  GridData g;
  for (std::size_t i = 0; i < n_r; ++i) g.r.push_back(r_min + (r_max - r_min) * i / (n_r - 1));
  for (std::size_t j = 0; j < n_theta; ++j)
    g.theta.push_back(theta_min + (theta_max - theta_min) * j / (n_theta - 1));
  for (double r : g.r) {
    for (double t : g.theta) {
      g.phi.push_back(spec.phi(r, t, 0).value());
      g.h.push_back(spec.h(r, t, 0).value());
      g.k.push_back(spec.k(r, t, 0).value());
    }
  }
  return g;
}

GridData read_grid_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  auto next_line = [&]() -> bool {
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) return true;
    }
    return false;
  };
  if (!next_line() || line != "r,theta,phi,h,k")
    fail(ErrorCode::Parse, "grid CSV line 1: expected header 'r,theta,phi,h,k'");
  std::vector<std::array<double, 5>> rows;
  while (next_line()) {
    std::array<double, 5> row{};
    std::istringstream fields(line);
    std::string cell;
    std::size_t n = 0;
    while (std::getline(fields, cell, ',')) {
      if (n >= 5) fail(ErrorCode::Parse, "grid CSV line " + std::to_string(line_no) + ": too many columns");
      try {
        std::size_t used = 0;
        row[n] = std::stod(cell, &used);
        if (used != cell.size()) throw std::invalid_argument(cell);
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, "grid CSV line " + std::to_string(line_no) + ": bad number '" + cell + "'");
      }
      ++n;
    }
    if (n != 5) fail(ErrorCode::Parse, "grid CSV line " + std::to_string(line_no) + ": expected 5 columns");
    rows.push_back(row);
  }
  GridData g;
  for (const auto& row : rows) {
    if (g.r.empty() || row[0] != g.r.back()) {
      if (!g.r.empty() && row[0] <= g.r.back()) fail(ErrorCode::Parse, "grid CSV: r must be ascending");
      g.r.push_back(row[0]);
    }
  }
  if (g.r.empty()) fail(ErrorCode::EmptyGrid, "grid CSV has no rows");
  const std::size_t n_theta = rows.size() / g.r.size();
  if (n_theta * g.r.size() != rows.size()) fail(ErrorCode::Parse, "grid CSV is not rectangular");
  for (std::size_t j = 0; j < n_theta; ++j) g.theta.push_back(rows[j][1]);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const std::size_t ir = i / n_theta, it = i % n_theta;
    if (rows[i][0] != g.r[ir] || rows[i][1] != g.theta[it])
      fail(ErrorCode::Parse, "grid CSV is not rectangular (row " + std::to_string(i + 2) + ")");
    if (it > 0 && g.theta[it] <= g.theta[it - 1]) fail(ErrorCode::Parse, "grid CSV: theta must be ascending");
    g.phi.push_back(rows[i][2]);
    g.h.push_back(rows[i][3]);
    g.k.push_back(rows[i][4]);
  }
  return g;
}

std::string write_grid_csv(const GridData& grid) {
  std::ostringstream out;
  out.precision(17);
  out << "r,theta,phi,h,k\n";
  for (std::size_t i = 0; i < grid.r.size(); ++i)
    for (std::size_t j = 0; j < grid.theta.size(); ++j) {
      const std::size_t n = grid.index(i, j);
      out << grid.r[i] << ',' << grid.theta[j] << ',' << grid.phi[n] << ',' << grid.h[n] << ',' << grid.k[n]
          << '\n';
    }
  return out.str();
}

namespace {

constexpr std::size_t kStencil = 8;

// weights[a][m]: a-th derivative at x of the Lagrange basis polynomial of node m.
std::array<std::array<double, kStencil>, 4> lagrange_weights(const double* nodes, double x) {
  std::array<std::array<double, kStencil>, 4> w{};
  for (std::size_t m = 0; m < kStencil; ++m) {
    // Expand prod_{q != m} (u + x - x_q) / (x_m - x_q) as a polynomial in u = (point - x).
    std::array<double, kStencil> poly{};
    poly[0] = 1.0;
    std::size_t deg = 0;
    for (std::size_t q = 0; q < kStencil; ++q) {
      if (q == m) continue;
      const double shift = x - nodes[q];
      const double scale = 1.0 / (nodes[m] - nodes[q]);
      for (std::size_t e = deg + 2; e-- > 0;) {
        const double lower = e > 0 ? poly[e - 1] : 0.0;
        poly[e] = (poly[e] * shift + lower) * scale;
      }
      ++deg;
    }
    for (std::size_t a = 0; a < 4; ++a) w[a][m] = poly[a] * jet_detail::factorial(static_cast<int>(a));
  }
  return w;
}

std::size_t stencil_start(const std::vector<double>& nodes, double x) {
  const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
  const std::ptrdiff_t i = (it - nodes.begin()) - 1;
  const std::ptrdiff_t start = std::clamp<std::ptrdiff_t>(i - 3, 0, static_cast<std::ptrdiff_t>(nodes.size() - kStencil));
  return static_cast<std::size_t>(start);
}

}  // namespace

ScalarField grid_field(std::shared_ptr<const GridData> grid, std::vector<double> GridData::* values) {
  if (grid->r.size() < kStencil || grid->theta.size() < kStencil)
    fail(ErrorCode::BadParams, "grid-sampled fields need at least 8 nodes per axis");
  auto eval = [grid, values](double r, double theta, int order) {
    const auto& g = *grid;
    if (r < g.r.front() || r > g.r.back() || theta < g.theta.front() || theta > g.theta.back())
      fail(ErrorCode::Domain, "point outside the sampled grid");
    const std::size_t i0 = stencil_start(g.r, r), j0 = stencil_start(g.theta, theta);
    const auto wr = lagrange_weights(&g.r[i0], r);
    const auto wt = lagrange_weights(&g.theta[j0], theta);
    const auto& f = g.*values;
    std::array<double, jet_detail::kTerms> partials{};
    for (std::size_t s = 0; s < jet_detail::kTerms; ++s) {
      const auto [a, b] = jet_detail::kMonomials[s];
      if (a + b > order) continue;
      double acc = 0.0;
      for (std::size_t p = 0; p < kStencil; ++p)
        for (std::size_t q = 0; q < kStencil; ++q) acc += wr[a][p] * wt[b][q] * f[g.index(i0 + p, j0 + q)];
      partials[s] = acc;
    }
    return Jet::from_partials(partials, order);
  };
  return ScalarField(eval, kMaxJetOrder, Provenance::GridSampled);
}

MetricSpec grid_spec(const GridData& grid, Signature signature) {
  auto shared = std::make_shared<const GridData>(grid);
  MetricSpec spec;
  spec.name = "grid";
  spec.signature = signature;
  spec.phi = grid_field(shared, &GridData::phi);
  spec.h = grid_field(shared, &GridData::h);
  spec.k = grid_field(shared, &GridData::k);
  return spec;
}

}  // namespace killing3
