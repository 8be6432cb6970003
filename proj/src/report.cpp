#include "killing3/report.hpp"

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <json.hpp>
#include <random>
#include <sstream>
#include <thread>

#include "killing3/completeness.hpp"
#include "killing3/conformal_family.hpp"
#include "killing3/cotton_york.hpp"
#include "killing3/curvature.hpp"
#include "killing3/lorentz.hpp"
#include "killing3/np.hpp"

namespace killing3 {

namespace fs = std::filesystem;
using json = nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
  return s;
}

// Case-insensitive, ignoring '_' and '-'.
std::string normalized(const std::string& s) {
  std::string out;
  for (char c : lower(s))
    if (c != '_' && c != '-') out += c;
  return out;
}

bool parse_double(const std::string& text, double& out) {
  const std::string t = trim(text);
  if (t.empty()) return false;
  char* end = nullptr;
  out = std::strtod(t.c_str(), &end);
  return end == t.c_str() + t.size() && std::isfinite(out);
}

bool parse_count(const std::string& text, std::size_t& out) {
  const std::string t = trim(text);
  if (t.empty() || !std::all_of(t.begin(), t.end(), [](unsigned char c) { return std::isdigit(c); })) return false;
  out = std::stoul(t);
  return true;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

}  // namespace

const char* to_string(Command c) {
  switch (c) {
    case Command::Analyze: return "analyze";
    case Command::Verify: return "verify";
    case Command::Flatness: return "flatness";
    case Command::Geodesic: return "geodesic";
    case Command::Family: return "family";
    case Command::Lorentz: return "lorentz";
  }
  return "analyze";
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::Analyze, Command::Verify, Command::Flatness, Command::Geodesic, Command::Family,
                    Command::Lorentz})
    if (name == to_string(c)) return c;
  fail(ErrorCode::BadParams, "unknown command '" + name + "'");
}

OutputFormat parse_format(const std::string& name) {
  if (name == "text") return OutputFormat::Text;
  if (name == "jsonl" || name == "json-lines") return OutputFormat::JsonLines;
  fail(ErrorCode::BadParams, "unknown format '" + name + "' (text or jsonl)");
}

MetricSpec parse_metric_spec(const std::string& text, const std::string& base_dir) {
  std::optional<std::string> catalog_name, grid_path;
  Signature signature = Signature::Riemannian;
  std::map<std::string, double> params;
  std::map<std::string, std::size_t> param_lines;
  std::map<std::string, std::size_t> seen;

  std::istringstream in(text);
  std::string raw;
  std::size_t line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    const std::string line = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (eq == std::string::npos) fail(ErrorCode::Parse, where + "expected key = value");
    const std::string key = trim(line.substr(0, eq)), value = trim(line.substr(eq + 1));
    if (key.empty()) fail(ErrorCode::Parse, where + "empty key");
    if (value.empty()) fail(ErrorCode::Parse, where + "empty value for '" + key + "'");
    if (seen.count(key))
      fail(ErrorCode::Parse, where + "duplicate key '" + key + "' (first on line " + std::to_string(seen[key]) + ")");
    seen[key] = line_no;

    if (key == "catalog") {
      catalog_name = value;
    } else if (key == "grid_csv") {
      grid_path = value;
    } else if (key == "signature") {
      if (value == "riemannian") signature = Signature::Riemannian;
      else if (value == "lorentzian") signature = Signature::Lorentzian;
      else fail(ErrorCode::Parse, where + "signature must be riemannian or lorentzian");
    } else {
      double v = 0.0;
      if (!parse_double(value, v)) fail(ErrorCode::Parse, where + "value of '" + key + "' is not a finite number");
      params[key] = v;
      param_lines[key] = line_no;
    }
  }

  if (catalog_name && grid_path) fail(ErrorCode::Parse, "catalog and grid_csv are mutually exclusive");
  if (grid_path) {
    if (!params.empty()) {
      const auto& [key, line] = *param_lines.begin();
      fail(ErrorCode::Parse, "line " + std::to_string(line) + ": unknown key '" + key + "' for a grid_csv spec");
    }
    fs::path path(*grid_path);
    if (path.is_relative() && !base_dir.empty()) path = fs::path(base_dir) / path;
    MetricSpec spec = grid_spec(read_grid_csv(read_text_file(path.string())), signature);
    spec.name = "grid:" + *grid_path;
    return spec;
  }
  if (!catalog_name) fail(ErrorCode::Parse, "missing 'catalog' or 'grid_csv'");
  const std::vector<std::string> keys = catalog_keys(*catalog_name);
  for (const auto& [key, line] : param_lines)
    if (std::find(keys.begin(), keys.end(), key) == keys.end())
      fail(ErrorCode::Parse, "line " + std::to_string(line) + ": unknown key '" + key + "' for catalog '" +
                                 *catalog_name + "'");
  MetricSpec spec = catalog(*catalog_name, params);
  spec.signature = signature;
  return spec;
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::Io, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) fail(ErrorCode::Io, "read failure on '" + path + "'");
  return buf.str();
}

void write_atomic(const std::string& path, const std::string& content) {
  const fs::path target(path);
  const fs::path tmp = target.parent_path() / (target.filename().string() + ".tmp." + std::to_string(::getpid()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) fail(ErrorCode::Io, "cannot write '" + tmp.string() + "'");
    out << content;
    out.flush();
    if (!out) fail(ErrorCode::Io, "write failure on '" + tmp.string() + "'");
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp, ec);
    fail(ErrorCode::Io, "cannot move output into place at '" + path + "'");
  }
}

std::vector<Point> GridBox::lattice() const {
  std::vector<Point> out;
  out.reserve(n_r * n_theta);
  for (std::size_t i = 0; i < n_r; ++i)
    for (std::size_t j = 0; j < n_theta; ++j)
      out.push_back({r_min + (r_max - r_min) * static_cast<double>(i) / (n_r - 1),
                     theta_min + (theta_max - theta_min) * static_cast<double>(j) / (n_theta - 1)});
  return out;
}

GridBox parse_grid(const std::string& text) {
  const auto axes = split(text, ',');
  if (axes.size() != 2) fail(ErrorCode::Parse, "grid must look like rmin:rmax:nr,tmin:tmax:nt");
  GridBox box;
  double* lo[2] = {&box.r_min, &box.theta_min};
  double* hi[2] = {&box.r_max, &box.theta_max};
  std::size_t* n[2] = {&box.n_r, &box.n_theta};
  for (int a = 0; a < 2; ++a) {
    const auto parts = split(axes[a], ':');
    if (parts.size() != 3 || !parse_double(parts[0], *lo[a]) || !parse_double(parts[1], *hi[a]) ||
        !parse_count(parts[2], *n[a]))
      fail(ErrorCode::Parse, "bad grid axis '" + axes[a] + "' (expected min:max:count)");
    if (*n[a] < 2) fail(ErrorCode::BadParams, "grid counts must be at least 2");
    if (!(*hi[a] > *lo[a])) fail(ErrorCode::BadParams, "grid axis '" + axes[a] + "' needs max > min");
  }
  return box;
}

std::vector<Point> halton_points(const GridBox& box, std::size_t n, std::uint64_t seed) {
  auto radical_inverse = [](std::size_t i, unsigned base) {
    double f = 1.0, out = 0.0;
    while (i > 0) {
      f /= base;
      out += f * static_cast<double>(i % base);
      i /= base;
    }
    return out;
  };
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const double shift_r = unit(rng), shift_t = unit(rng);
  std::vector<Point> out;
  out.reserve(n);
  for (std::size_t i = 1; i <= n; ++i) {
    const double u = std::fmod(radical_inverse(i, 2) + shift_r, 1.0);
    const double v = std::fmod(radical_inverse(i, 3) + shift_t, 1.0);
    out.push_back({box.r_min + u * (box.r_max - box.r_min), box.theta_min + v * (box.theta_max - box.theta_min)});
  }
  return out;
}

std::map<std::string, double> default_tolerances() {
  return {{"structure", 1e-8}, {"killing", 1e-9}, {"gauss", 1e-8},      {"spectrum", 1e-9},
          {"cy_symmetry", 1e-9}, {"lorentz", 1e-8}, {"cy", 1e-8},       {"cy_grid", 1e-4},
          {"fit", 1e-6},       {"drift", 1e-8},   {"projection", 1e-6}, {"energy", 1e-8},
          {"zero", 1e-6},      {"step_tol", 1e-10}, {"family_fit", 1e-4}};
}

std::size_t thread_count(std::size_t requested) {
  std::size_t n = requested;
  if (n == 0) {
    if (const char* env = std::getenv("KILLING3_THREADS")) {
      std::size_t v = 0;
      if (!parse_count(env, v) || v == 0) fail(ErrorCode::BadParams, "KILLING3_THREADS must be a positive integer");
      n = v;
    } else {
      n = std::max(1u, std::thread::hardware_concurrency());
    }
  }
  return n;
}

std::map<std::string, double> max_residuals(const std::vector<PointRecord>& records) {
  std::map<std::string, double> out;
  for (const auto& rec : records)
    for (const auto& [key, v] : rec.residuals) {
      auto it = out.find(key);
      if (it == out.end()) out[key] = v;
      else it->second = std::max(it->second, v);
    }
  return out;
}

namespace {

// Runs fn(i) for i < n on a small pool; the lowest-index failure is rethrown.
void parallel_for(std::size_t n, std::size_t threads, const std::function<void(std::size_t)>& fn) {
  threads = std::min(threads, std::max<std::size_t>(n, 1));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::mutex mu;
  std::size_t failed_index = n;
  std::exception_ptr failure;
  auto worker = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(mu);
        if (i < failed_index) {
          failed_index = i;
          failure = std::current_exception();
        }
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);
}

bool is_analytic(const MetricSpec& spec) {
  return spec.phi.provenance() == Provenance::Analytic && spec.h.provenance() == Provenance::Analytic &&
         spec.k.provenance() == Provenance::Analytic;
}

struct Context {
  const RunConfig& config;
  MetricSpec spec;
  std::map<std::string, double> tol;
  std::size_t threads;
  std::vector<Point> points;

  double t(const std::string& name) const { return tol.at(name); }
};

MetricSpec riemannian_partner(const MetricSpec& spec) {
  MetricSpec r = spec;
  r.signature = Signature::Riemannian;
  return r;
}

double spectrum_gap(const CurvaturePacket& c) {
  std::array<double, 3> a = c.spectrum, b = c.direct_spectrum;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return std::max({std::abs(a[0] - b[0]), std::abs(a[1] - b[1]), std::abs(a[2] - b[2])});
}

// Residual keys compared against each tolerance name.
void check_residuals(const std::map<std::string, std::string>& tol_of, const Context& ctx, ReportSummary& s) {
  for (const auto& [key, value] : s.max_residuals) {
    auto it = tol_of.find(key);
    if (it == tol_of.end()) continue;
    const double limit = ctx.t(it->second);
    if (!(value <= limit)) {
      std::ostringstream msg;
      msg << key << " = " << value << " exceeds " << it->second << " tolerance " << limit;
      s.failures.push_back(msg.str());
    }
  }
}

void fill_records(const Context& ctx, std::vector<PointRecord>& records,
                  const std::function<void(const Point&, PointRecord&)>& fn) {
  records.assign(ctx.points.size(), {});
  parallel_for(ctx.points.size(), ctx.threads, [&](std::size_t i) {
    records[i].point = ctx.points[i];
    fn(ctx.points[i], records[i]);
  });
}

void run_analyze(const Context& ctx, Report& rep) {
  const bool riem = ctx.spec.signature == Signature::Riemannian;
  fill_records(ctx, rep.records, [&](const Point& p, PointRecord& rec) {
    const CurvatureScalars cs = curvature_scalars(ctx.spec, p);
    const KinematicData kin = kinematics(ctx.spec, p);
    rec.values["S"] = cs.S;
    rec.values["ric_tt"] = cs.ric_TT();
    rec.values["omega"] = kin.omega;
    if (riem) {
      const CurvaturePacket c = curvature_packet(ctx.spec, p);
      rec.values["lambda1"] = c.spectrum[0];
      rec.values["lambda2"] = c.spectrum[1];
      rec.values["lambda3"] = c.spectrum[2];
      rec.values["cy_norm"] = cotton_york(ctx.spec, p).norm();
    }
    rec.residuals["gauss"] = gauss_residual(ctx.spec, p);
    rec.residuals["kinematic"] = std::max({std::abs(kin.geodesic), std::abs(kin.div_T), kin.shear_norm()});
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  check_residuals({{"gauss", "gauss"}, {"kinematic", "killing"}}, ctx, rep.summary);
  rep.summary.verdicts["result"] = rep.summary.failures.empty() ? "pass" : "fail";
}

void run_verify(const Context& ctx, Report& rep) {
  const bool riem = ctx.spec.signature == Signature::Riemannian;
  const SignaturePair pair = riem ? to_lorentz(ctx.spec) : to_lorentz(riemannian_partner(ctx.spec));
  fill_records(ctx, rep.records, [&](const Point& p, PointRecord& rec) {
    // The frame identities are Riemannian; a Lorentzian spec is checked through its partner.
    const StructureResiduals sr = structure_residuals(pair.riemannian, p);
    rec.residuals["structure"] = sr.max_structure();
    rec.residuals["killing_identities"] = sr.max_killing();
    rec.residuals["gauss"] = gauss_residual(ctx.spec, p);
    const KillingReport kr = killing_test(ctx.spec, std::vector<Point>{p});
    rec.residuals["kinematic"] = kr.max_kinematic();
    rec.residuals["lie"] = kr.max_lie;
    if (riem) {
      const CurvaturePacket c = curvature_packet(ctx.spec, p);
      rec.residuals["spectrum"] = spectrum_gap(c);
      rec.residuals["ham1"] = c.ham1_residual;
      const CottonYorkMatrix cy = cotton_york(ctx.spec, p);
      rec.residuals["cy_symmetry"] = cy.symmetry_residual();
      rec.residuals["cy_trace"] = std::abs(cy.trace());
      rec.values["S"] = c.scalar_S;
      rec.values["ric_tt"] = c.ricci(0, 0);
    }
    const LorentzRelations lr = lorentz_relations_check(pair, p);
    rec.residuals["lorentz_ric_tt"] = lr.res_ric_tt;
    rec.residuals["lorentz_scalar"] = lr.res_scalar;
    rec.residuals["lorentz_gauss"] = lr.res_gauss;
    rec.values["S_L"] = lr.S_L;
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  check_residuals({{"structure", "structure"},
                   {"killing_identities", "structure"},
                   {"gauss", "gauss"},
                   {"kinematic", "killing"},
                   {"lie", "killing"},
                   {"spectrum", "spectrum"},
                   {"ham1", "structure"},
                   {"cy_symmetry", "cy_symmetry"},
                   {"cy_trace", "cy_symmetry"},
                   {"lorentz_ric_tt", "lorentz"},
                   {"lorentz_scalar", "lorentz"},
                   {"lorentz_gauss", "lorentz"}},
                  ctx, rep.summary);
  rep.summary.verdicts["result"] = rep.summary.failures.empty() ? "pass" : "fail";
}

void put_fit(const FlatnessFit& fit, ReportSummary& s) {
  s.metrics["fit_B"] = fit.B;
  s.metrics["fit_C"] = fit.C;
  s.metrics["fit_residual"] = fit.residual_max;
  s.metrics["cy_max"] = fit.cy_max;
  s.metrics["cy_tolerance"] = fit.cy_tolerance;
  s.metrics["fit_non_unique"] = fit.non_unique ? 1.0 : 0.0;
  s.metrics["constant_twist"] = fit.constant_twist ? 1.0 : 0.0;
  s.metrics["shortcut_max"] = fit.shortcut_max;
  s.verdicts["flatness"] = to_string(fit.verdict);
}

FlatnessTolerances flatness_tolerances(const Context& ctx) {
  FlatnessTolerances ft;
  ft.cy_analytic = ctx.t("cy");
  ft.cy_grid = ctx.t("cy_grid");
  ft.fit = ctx.t("fit");
  return ft;
}

void run_flatness(const Context& ctx, Report& rep) {
  const FlatnessFit fit = flatness_verdict(ctx.spec, ctx.points, flatness_tolerances(ctx));
  fill_records(ctx, rep.records, [&](const Point& p, PointRecord& rec) {
    const CottonYorkMatrix cy = cotton_york(ctx.spec, p);
    const CurvaturePacket c = curvature_packet(ctx.spec, p);
    rec.values["cy_norm"] = cy.norm();
    rec.values["S"] = c.scalar_S;
    rec.values["ric_tt"] = c.ricci(0, 0);
    rec.values["omega"] = c.omega;
    rec.residuals["cy_symmetry"] = cy.symmetry_residual();
    rec.residuals["cy_trace"] = std::abs(cy.trace());
    rec.residuals["wpde"] = wpde_residual(ctx.spec, p, fit.B, fit.C);
    rec.residuals["shortcut"] = std::abs(c.scalar_S - 3.0 * c.ricci(0, 0));
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  put_fit(fit, rep.summary);
  rep.summary.verdicts["result"] = to_string(fit.verdict);
  if (!ctx.config.expect && fit.verdict == FlatVerdict::Inconclusive)
    rep.summary.failures.push_back("flatness verdict is Inconclusive");
}

void run_geodesic(const Context& ctx, Report& rep) {
  const GridBox& box = ctx.config.grid;
  const CurvatureProfile prof =
      curvature_profile(ctx.spec, box.r_max, std::max<std::size_t>(box.n_r, 16), box.n_theta, box.r_min);
  const CompletenessVerdict cv = completeness_verdict(prof, ctx.t("zero"));
  rep.summary.metrics["tail_estimate"] = prof.tail_estimate;
  rep.summary.metrics["tail_spread"] = prof.tail_spread;
  rep.summary.metrics["tail_slope"] = prof.tail_slope;
  rep.summary.metrics["window_r_min"] = box.r_min;
  rep.summary.metrics["window_r_max"] = box.r_max;
  rep.summary.verdicts["completeness"] = to_string(cv);
  rep.summary.verdicts["result"] = to_string(cv);

  const std::size_t n = ctx.config.geodesics;
  const std::vector<Point> starts = halton_points(box, n, ctx.config.seed);
  // Directions are drawn up front so the result does not depend on scheduling.
  std::mt19937_64 rng(ctx.config.seed ^ 0x9e3779b97f4a7c15ULL);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::vector<std::array<double, 3>> dirs(n);
  for (auto& d : dirs) d = {normal(rng), normal(rng), normal(rng)};
  const bool riem = ctx.spec.signature == Signature::Riemannian;

  std::vector<std::string> csv(n);
  rep.records.assign(n, {});
  parallel_for(n, ctx.threads, [&](std::size_t i) {
    PointRecord& rec = rep.records[i];
    rec.point = starts[i];
    auto [c, a, b] = dirs[i];
    if (riem) {
      const double norm = std::sqrt(c * c + a * a + b * b);
      c /= norm, a /= norm, b /= norm;
    } else {
      c = std::sqrt(1.0 + a * a + b * b);
    }
    GeodesicState init = frame_initial_state(ctx.spec, starts[i], c, a, b);
    init.velocity = (1.0 / std::sqrt(std::abs(init.speed))) * init.velocity;
    rec.values["c0"] = c;
    rec.values["a0"] = a;
    rec.values["b0"] = b;
    try {
      const GeodesicResult res =
          integrate_geodesic(ctx.spec, init, ctx.config.length, ctx.t("step_tol"), std::min(20.0, ctx.config.length));
      rec.values["blow_up"] = 0.0;
      rec.values["length"] = res.samples.back().s;
      rec.values["rejected_steps"] = static_cast<double>(res.rejected_steps);
      rec.values["final_r"] = res.samples.back().state.r;
      rec.values["final_theta"] = res.samples.back().state.theta;
      rec.residuals["c_drift"] = res.c_drift_max;
      rec.residuals["speed_drift"] = res.speed_drift_max;
      rec.residuals["projection"] = res.projection_residual;
      csv[i] = trajectory_csv(res);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::BlowUp) throw;
      rec.values["blow_up"] = 1.0;
    }
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  double blowups = 0.0;
  for (const auto& rec : rep.records) blowups += rec.values.at("blow_up");
  rep.summary.metrics["blow_ups"] = blowups;
  check_residuals({{"c_drift", "drift"}, {"speed_drift", "drift"}, {"projection", "projection"}}, ctx, rep.summary);

  if (!ctx.config.trajectory_dir.empty()) {
    std::error_code ec;
    fs::create_directories(ctx.config.trajectory_dir, ec);
    if (ec) fail(ErrorCode::Io, "cannot create trajectory directory '" + ctx.config.trajectory_dir + "'");
    for (std::size_t i = 0; i < n; ++i)
      if (!csv[i].empty())
        write_atomic((fs::path(ctx.config.trajectory_dir) / ("geodesic_" + std::to_string(i) + ".csv")).string(),
                     csv[i]);
  }
}

double param_or(const MetricSpec& spec, const std::string& key, double fallback) {
  auto it = spec.params.find(key);
  return it == spec.params.end() ? fallback : it->second;
}

void run_family(const Context& ctx, Report& rep) {
  if (ctx.spec.name != "cf_family") fail(ErrorCode::BadParams, "family needs catalog = cf_family");
  FamilyParams fp;
  fp.B = param_or(ctx.spec, "B", 0.0);
  fp.C = param_or(ctx.spec, "C", 1.0);
  fp.omega0 = param_or(ctx.spec, "omega0", 0.0);
  fp.omega_r0_sign = param_or(ctx.spec, "sign", 1.0) < 0 ? -1 : 1;
  const OmegaSolution sol = solve_omega_ode(fp);
  const auto [arc_lo, arc_hi] = monotone_arc(sol, fp.omega_r0_sign);
  auto& m = rep.summary.metrics;
  m["energy_drift"] = sol.energy_drift;
  m["equilibrium"] = sol.equilibrium ? 1.0 : 0.0;
  m["turning_points"] = static_cast<double>(sol.turning_points.size());
  m["arc_lo"] = arc_lo;
  m["arc_hi"] = arc_hi;
  m["ode_r_lo"] = sol.r_lo();
  m["ode_r_hi"] = sol.r_hi();
  if (sol.period) {
    m["period"] = *sol.period;
    m["periods_covered"] = (sol.r_hi() - sol.r_lo()) / *sol.period;
  }

  const FlatnessFit fit = flatness_verdict(ctx.spec, ctx.points, flatness_tolerances(ctx));
  fill_records(ctx, rep.records, [&](const Point& p, PointRecord& rec) {
    rec.values["cy_norm"] = cotton_york(ctx.spec, p).norm();
    rec.residuals["wpde_given"] = wpde_residual(ctx.spec, p, fp.B, fp.C);
    rec.residuals["gauss"] = gauss_residual(ctx.spec, p);
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  put_fit(fit, rep.summary);
  rep.summary.verdicts["result"] = to_string(fit.verdict);

  auto& f = rep.summary.failures;
  if (!(sol.energy_drift <= ctx.t("energy"))) f.push_back("omega ODE energy drift exceeds tolerance");
  if (fit.verdict != FlatVerdict::Flat) f.push_back(std::string("built metric flatness verdict is ") + to_string(fit.verdict));
  if (fit.non_unique) {
    // Constant Ric(T,T): only C - 2 B Ric(T,T) is determined.
    if (!(fit.residual_max <= ctx.t("fit"))) f.push_back("degenerate fit does not reproduce the data");
  } else if (!(std::abs(fit.B - fp.B) <= ctx.t("family_fit") && std::abs(fit.C - fp.C) <= ctx.t("family_fit"))) {
    f.push_back("fitted (B, C) differs from the requested parameters");
  }
  check_residuals({{"wpde_given", "fit"}, {"gauss", "gauss"}}, ctx, rep.summary);
}

void run_lorentz(const Context& ctx, Report& rep) {
  const SignaturePair pair = ctx.spec.signature == Signature::Riemannian ? to_lorentz(ctx.spec)
                                                                          : to_lorentz(riemannian_partner(ctx.spec));
  fill_records(ctx, rep.records, [&](const Point& p, PointRecord& rec) {
    const LorentzRelations lr = lorentz_relations_check(pair, p);
    rec.values["S_R"] = lr.S_R;
    rec.values["S_L"] = lr.S_L;
    rec.values["ric_tt_R"] = lr.ric_tt_R;
    rec.values["ric_tt_L"] = lr.ric_tt_L;
    rec.residuals["ric_tt"] = lr.res_ric_tt;
    rec.residuals["scalar"] = lr.res_scalar;
    rec.residuals["gauss_L"] = lr.res_gauss;
    rec.residuals["flip"] = pair.flip_residual(p);
    rec.residuals["unit_timelike"] = pair.unit_timelike_residual(p);
  });
  rep.summary.max_residuals = max_residuals(rep.records);
  const GridBox& box = ctx.config.grid;
  const LorentzCompleteness lc = lorentz_completeness(pair, box.r_max, std::max<std::size_t>(box.n_r, 16),
                                                      box.n_theta, box.r_min, ctx.t("zero"));
  rep.summary.metrics["profile_disagreement"] = lc.max_disagreement;
  rep.summary.metrics["tail_estimate"] = lc.lorentzian.tail_estimate;
  rep.summary.metrics["tail_spread"] = lc.lorentzian.tail_spread;
  rep.summary.metrics["tail_slope"] = lc.lorentzian.tail_slope;
  rep.summary.verdicts["completeness"] = to_string(lc.verdict);
  rep.summary.verdicts["result"] = to_string(lc.verdict);
  check_residuals({{"ric_tt", "lorentz"},
                   {"scalar", "lorentz"},
                   {"gauss_L", "lorentz"},
                   {"flip", "lorentz"},
                   {"unit_timelike", "lorentz"}},
                  ctx, rep.summary);
  if (!lc.profiles_agree(ctx.t("lorentz")))
    rep.summary.failures.push_back("Riemannian and Lorentzian completeness profiles disagree");
}

}  // namespace

Report run(const RunConfig& config) {
  std::map<std::string, double> tol = default_tolerances();
  MetricSpec spec;
  if (!config.spec_text.empty()) {
    spec = parse_metric_spec(config.spec_text);
  } else {
    if (config.spec_path.empty()) fail(ErrorCode::BadParams, "no metric spec given");
    spec = parse_metric_spec(read_text_file(config.spec_path), fs::path(config.spec_path).parent_path().string());
  }
  if (!is_analytic(spec))
    for (const char* name : {"structure", "killing", "gauss", "spectrum", "cy_symmetry", "lorentz"}) tol[name] = 1e-4;
  for (const auto& [name, value] : config.tolerances) {
    if (!tol.count(name)) fail(ErrorCode::BadParams, "unknown tolerance '" + name + "'");
    if (!(value > 0.0) || !std::isfinite(value)) fail(ErrorCode::BadParams, "tolerance '" + name + "' must be positive");
    tol[name] = value;
  }
  if (config.geodesics == 0 && config.command == Command::Geodesic)
    fail(ErrorCode::BadParams, "geodesic count must be positive");
  if (!(config.length > 0.0)) fail(ErrorCode::BadParams, "geodesic length must be positive");

  Context ctx{config, spec, tol, thread_count(config.threads), config.grid.lattice()};
  const std::vector<Point> extra = halton_points(config.grid, config.samples, config.seed);
  ctx.points.insert(ctx.points.end(), extra.begin(), extra.end());

  Report rep;
  rep.command = config.command;
  rep.spec_name = spec.name;
  rep.signature = spec.signature;
  rep.seed = config.seed;
  switch (config.command) {
    case Command::Analyze: run_analyze(ctx, rep); break;
    case Command::Verify: run_verify(ctx, rep); break;
    case Command::Flatness: run_flatness(ctx, rep); break;
    case Command::Geodesic: run_geodesic(ctx, rep); break;
    case Command::Family: run_family(ctx, rep); break;
    case Command::Lorentz: run_lorentz(ctx, rep); break;
  }
  for (const auto& [name, value] : tol) rep.summary.metrics["tol." + name] = value;

  if (config.expect) {
    const std::string got = rep.summary.verdicts["result"];
    if (normalized(got) != normalized(*config.expect))
      rep.summary.failures.push_back("expected verdict " + *config.expect + ", got " + got);
  }
  rep.summary.passed = rep.summary.failures.empty();
  return rep;
}

std::string to_text(const Report& report) {
  std::ostringstream out;
  out.precision(6);
  out << "killing3 " << to_string(report.command) << "  spec=" << report.spec_name
      << "  signature=" << to_string(report.signature) << "  seed=" << report.seed << '\n';
  out << "points: " << report.records.size() << '\n';
  if (!report.records.empty() && report.records.size() <= 12) {
    for (const auto& rec : report.records) {
      out << "  (" << rec.point.r << ", " << rec.point.theta << ")";
      for (const auto& [k, v] : rec.values) out << ' ' << k << '=' << v;
      out << '\n';
    }
  }
  out << "max residuals:\n";
  for (const auto& [k, v] : report.summary.max_residuals) out << "  " << k << " = " << v << '\n';
  bool header = false;
  for (const auto& [k, v] : report.summary.metrics) {
    if (k.rfind("tol.", 0) == 0) continue;
    if (!header) out << "metrics:\n";
    header = true;
    out << "  " << k << " = " << v << '\n';
  }
  for (const auto& [k, v] : report.summary.verdicts) out << "verdict " << k << ": " << v << '\n';
  for (const auto& f : report.summary.failures) out << "FAIL " << f << '\n';
  out << (report.summary.passed ? "PASS" : "FAIL") << '\n';
  return out.str();
}

namespace {

json header_json(const Report& r) {
  return {{"command", to_string(r.command)},
          {"spec", r.spec_name},
          {"signature", to_string(r.signature)},
          {"seed", r.seed}};
}

}  // namespace

std::string to_jsonl(const Report& report) {
  std::ostringstream out;
  json head = header_json(report);
  head["type"] = "header";
  out << head.dump() << '\n';
  for (const auto& rec : report.records) {
    json j{{"type", "point"}, {"r", rec.point.r}, {"theta", rec.point.theta}, {"values", rec.values},
           {"residuals", rec.residuals}};
    out << j.dump() << '\n';
  }
  json s{{"type", "summary"},
         {"max_residuals", report.summary.max_residuals},
         {"metrics", report.summary.metrics},
         {"verdicts", report.summary.verdicts},
         {"failures", report.summary.failures},
         {"passed", report.summary.passed}};
  out << s.dump() << '\n';
  return out.str();
}

Report report_from_jsonl(const std::string& text) {
  Report rep;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool have_summary = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      const json j = json::parse(line);
      const std::string type = j.at("type");
      if (type == "header") {
        rep.command = parse_command(j.at("command"));
        rep.spec_name = j.at("spec");
        rep.signature = j.at("signature") == "lorentzian" ? Signature::Lorentzian : Signature::Riemannian;
        rep.seed = j.at("seed");
      } else if (type == "point") {
        PointRecord rec;
        rec.point = {j.at("r"), j.at("theta")};
        rec.values = j.at("values").get<std::map<std::string, double>>();
        rec.residuals = j.at("residuals").get<std::map<std::string, double>>();
        rep.records.push_back(std::move(rec));
      } else if (type == "summary") {
        rep.summary.max_residuals = j.at("max_residuals").get<std::map<std::string, double>>();
        rep.summary.metrics = j.at("metrics").get<std::map<std::string, double>>();
        rep.summary.verdicts = j.at("verdicts").get<std::map<std::string, std::string>>();
        rep.summary.failures = j.at("failures").get<std::vector<std::string>>();
        rep.summary.passed = j.at("passed");
        have_summary = true;
      } else {
        fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": unknown record type '" + type + "'");
      }
    } catch (const json::exception& e) {
      fail(ErrorCode::Parse, "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  if (!have_summary) fail(ErrorCode::Parse, "report has no summary line");
  return rep;
}

}  // namespace killing3
