#include "killing3/killing3.h"

#include <cmath>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <new>
#include <string>

#include "killing3/cotton_york.hpp"
#include "killing3/curvature.hpp"
#include "killing3/np.hpp"
#include "killing3/report.hpp"

struct k3_spec {
  killing3::MetricSpec spec;
};

struct k3_report {
  killing3::Report report;
  std::string rendered;
};

namespace {

thread_local std::string last_error;

k3_status set_error(k3_status status, const std::string& message) {
  last_error = message;
  return status;
}

// Runs fn, translating library exceptions into status codes.
template <class Fn>
k3_status guarded(Fn&& fn) {
  try {
    last_error.clear();
    fn();
    return K3_OK;
  } catch (const killing3::Error& e) {
    return set_error(static_cast<k3_status>(static_cast<int>(e.code())), e.what());
  } catch (const std::bad_alloc&) {
    return set_error(K3_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(K3_ERR_INTERNAL, e.what());
  } catch (...) {
    return set_error(K3_ERR_INTERNAL, "unknown failure");
  }
}

k3_status null_arg(const char* what) { return set_error(K3_ERR_BAD_PARAMS, std::string(what) + " is NULL"); }

}  // namespace

extern "C" {

const char* k3_version(void) { return "0.1.0"; }

const char* k3_last_error(void) { return last_error.c_str(); }

const char* k3_status_name(k3_status status) {
  if (status == K3_OK) return "Ok";
  if (status == K3_ERR_INTERNAL) return "Internal";
  if (status < K3_ERR_NON_FINITE || status > K3_ERR_IO) return "Unknown";
  return killing3::to_string(static_cast<killing3::ErrorCode>(status));
}

int k3_exit_class(k3_status status) {
  if (status == K3_OK) return 0;
  if (status < K3_ERR_NON_FINITE || status > K3_ERR_IO) return 3;
  return killing3::exit_class(static_cast<killing3::ErrorCode>(status));
}

k3_status k3_spec_parse(const char* text, const char* base_dir, k3_spec** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new k3_spec{killing3::parse_metric_spec(text, base_dir ? base_dir : "")}; });
}

k3_status k3_spec_load(const char* path, k3_spec** out) {
  if (!path) return null_arg("path");
  if (!out) return null_arg("out");
  return guarded([&] {
    const std::string text = killing3::read_text_file(path);
    const std::string dir = std::filesystem::path(path).parent_path().string();
    *out = new k3_spec{killing3::parse_metric_spec(text, dir)};
  });
}

k3_status k3_spec_catalog(const char* name, const char* const* keys, const double* values, size_t n, k3_spec** out) {
  if (!name) return null_arg("name");
  if (!out) return null_arg("out");
  if (n > 0 && (!keys || !values)) return null_arg("keys/values");
  return guarded([&] {
    std::map<std::string, double> params;
    for (size_t i = 0; i < n; ++i) params[keys[i]] = values[i];
    *out = new k3_spec{killing3::catalog(name, params)};
  });
}

k3_status k3_spec_set_lorentzian(k3_spec* spec, int lorentzian) {
  if (!spec) return null_arg("spec");
  spec->spec.signature = lorentzian ? killing3::Signature::Lorentzian : killing3::Signature::Riemannian;
  return K3_OK;
}

const char* k3_spec_name(const k3_spec* spec) { return spec ? spec->spec.name.c_str() : ""; }

void k3_spec_free(k3_spec* spec) { delete spec; }

k3_status k3_metric_components(const k3_spec* spec, double r, double theta, double g[9]) {
  if (!spec) return null_arg("spec");
  if (!g) return null_arg("g");
  return guarded([&] {
    const killing3::Sym3 m = killing3::metric_components(spec->spec, {r, theta});
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[3 * i + j] = m(i, j);
  });
}

k3_status k3_curvature_at(const k3_spec* spec, double r, double theta, k3_curvature* out) {
  if (!spec) return null_arg("spec");
  if (!out) return null_arg("out");
  return guarded([&] {
    const killing3::Point p{r, theta};
    const auto cs = killing3::curvature_scalars(spec->spec, p);
    k3_curvature c{};
    c.S = cs.S;
    c.ric_tt = cs.ric_TT();
    c.omega = killing3::kinematics(spec->spec, p).omega;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    c.spectrum[0] = c.spectrum[1] = c.spectrum[2] = c.cy_norm = nan;
    if (spec->spec.signature == killing3::Signature::Riemannian) {
      const auto packet = killing3::curvature_packet(spec->spec, p);
      for (int i = 0; i < 3; ++i) c.spectrum[i] = packet.spectrum[i];
      c.cy_norm = killing3::cotton_york(spec->spec, p).norm();
    }
    *out = c;
  });
}

void k3_run_config_init(k3_run_config* config) {
  if (!config) return;
  const killing3::RunConfig d;
  *config = k3_run_config{};
  config->seed = d.seed;
  config->samples = d.samples;
  config->geodesics = d.geodesics;
  config->length = d.length;
  config->threads = d.threads;
}

k3_status k3_run(const k3_run_config* config, k3_report** out) {
  if (!config) return null_arg("config");
  if (!out) return null_arg("out");
  if (!config->command) return null_arg("command");
  if (!config->grid) return null_arg("grid");
  if (config->n_tol > 0 && (!config->tol_names || !config->tol_values)) return null_arg("tolerances");
  return guarded([&] {
    killing3::RunConfig rc;
    rc.command = killing3::parse_command(config->command);
    if (config->spec_text) rc.spec_text = config->spec_text;
    if (config->spec_path) rc.spec_path = config->spec_path;
    rc.grid = killing3::parse_grid(config->grid);
    for (size_t i = 0; i < config->n_tol; ++i) rc.tolerances[config->tol_names[i]] = config->tol_values[i];
    rc.seed = config->seed;
    if (config->expect) rc.expect = config->expect;
    if (config->trajectory_dir) rc.trajectory_dir = config->trajectory_dir;
    rc.threads = config->threads;
    rc.samples = config->samples;
    rc.geodesics = config->geodesics;
    rc.length = config->length;
    auto* rep = new k3_report{killing3::run(rc), {}};
    *out = rep;
  });
}

int k3_report_passed(const k3_report* report) { return report && report->report.summary.passed ? 1 : 0; }

int k3_report_exit_code(const k3_report* report) { return report ? report->report.exit_code() : 1; }

size_t k3_report_point_count(const k3_report* report) { return report ? report->report.records.size() : 0; }

k3_status k3_report_max_residual(const k3_report* report, const char* key, double* out) {
  if (!report) return null_arg("report");
  if (!key || !out) return null_arg("key/out");
  const auto& m = report->report.summary.max_residuals;
  auto it = m.find(key);
  if (it == m.end()) return set_error(K3_ERR_BAD_PARAMS, std::string("no residual named '") + key + "'");
  *out = it->second;
  return K3_OK;
}

k3_status k3_report_verdict(const k3_report* report, const char* key, const char** out) {
  if (!report) return null_arg("report");
  if (!key || !out) return null_arg("key/out");
  const auto& m = report->report.summary.verdicts;
  auto it = m.find(key);
  if (it == m.end()) return set_error(K3_ERR_BAD_PARAMS, std::string("no verdict named '") + key + "'");
  *out = it->second.c_str();
  return K3_OK;
}

k3_status k3_report_render(k3_report* report, int format, const char** out) {
  if (!report) return null_arg("report");
  if (!out) return null_arg("out");
  if (format != K3_FORMAT_TEXT && format != K3_FORMAT_JSONL) return set_error(K3_ERR_BAD_PARAMS, "unknown format");
  return guarded([&] {
    report->rendered =
        format == K3_FORMAT_JSONL ? killing3::to_jsonl(report->report) : killing3::to_text(report->report);
    *out = report->rendered.c_str();
  });
}

k3_status k3_report_write(k3_report* report, const char* path, int format) {
  if (!path) return null_arg("path");
  const char* text = nullptr;
  const k3_status st = k3_report_render(report, format, &text);
  if (st != K3_OK) return st;
  return guarded([&] { killing3::write_atomic(path, text); });
}

k3_status k3_report_parse_jsonl(const char* text, k3_report** out) {
  if (!text) return null_arg("text");
  if (!out) return null_arg("out");
  return guarded([&] { *out = new k3_report{killing3::report_from_jsonl(text), {}}; });
}

void k3_report_free(k3_report* report) { delete report; }

}  // extern "C"
