// killing3 command-line front end; talks to the library only through the C API.

#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "killing3/killing3.h"

namespace {

int report_failure(k3_status st) {
  std::fprintf(stderr, "killing3: %s: %s\n", k3_status_name(st), k3_last_error());
  return k3_exit_class(st);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Killing vector fields on Riemannian and Lorentzian 3-manifolds"};
  app.set_version_flag("--version", std::string(k3_version()));

  std::string command, spec_path, grid, format = "text", out_path, expect, trajectory_dir;
  std::vector<std::string> tol_args;
  std::uint64_t seed = 42;
  std::size_t samples = 100, geodesics = 4;
  double length = 100.0;

  app.add_option("command", command, "analyze | verify | flatness | geodesic | family | lorentz")
      ->required()
      ->check(CLI::IsMember({"analyze", "verify", "flatness", "geodesic", "family", "lorentz"}));
  app.add_option("--spec", spec_path, "metric spec file (key = value)")->required();
  app.add_option("--grid", grid, "rmin:rmax:nr,tmin:tmax:nt")->required();
  app.add_option("--tol", tol_args, "tolerance override NAME=VAL (repeatable)");
  app.add_option("--format", format, "text or jsonl")->check(CLI::IsMember({"text", "jsonl"}));
  app.add_option("--seed", seed, "seed for quasi-random sampling");
  app.add_option("--out", out_path, "write the report here (atomically) instead of stdout");
  app.add_option("--expect", expect, "required verdict, e.g. flat, notflat, CompleteCriterion");
  app.add_option("--trajectory", trajectory_dir, "directory for geodesic trajectory CSVs");
  app.add_option("--samples", samples, "quasi-random points added to the grid lattice");
  app.add_option("--geodesics", geodesics, "number of geodesics for the geodesic command");
  app.add_option("--length", length, "affine length of each geodesic");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  std::vector<std::string> tol_names;
  std::vector<double> tol_values;
  for (const auto& arg : tol_args) {
    const auto eq = arg.find('=');
    if (eq == std::string::npos || eq == 0) {
      std::fprintf(stderr, "killing3: --tol expects NAME=VAL, got '%s'\n", arg.c_str());
      return 2;
    }
    try {
      std::size_t used = 0;
      const std::string value = arg.substr(eq + 1);
      tol_values.push_back(std::stod(value, &used));
      if (used != value.size()) throw std::invalid_argument(value);
    } catch (const std::exception&) {
      std::fprintf(stderr, "killing3: --tol value in '%s' is not a number\n", arg.c_str());
      return 2;
    }
    tol_names.push_back(arg.substr(0, eq));
  }
  std::vector<const char*> name_ptrs;
  for (const auto& n : tol_names) name_ptrs.push_back(n.c_str());

  k3_run_config cfg;
  k3_run_config_init(&cfg);
  cfg.command = command.c_str();
  cfg.spec_path = spec_path.c_str();
  cfg.grid = grid.c_str();
  cfg.tol_names = name_ptrs.data();
  cfg.tol_values = tol_values.data();
  cfg.n_tol = tol_names.size();
  cfg.seed = seed;
  cfg.expect = expect.empty() ? nullptr : expect.c_str();
  cfg.trajectory_dir = trajectory_dir.empty() ? nullptr : trajectory_dir.c_str();
  cfg.samples = samples;
  cfg.geodesics = geodesics;
  cfg.length = length;

  k3_report* report = nullptr;
  k3_status st = k3_run(&cfg, &report);
  if (st != K3_OK) return report_failure(st);

  const int fmt = format == "jsonl" ? K3_FORMAT_JSONL : K3_FORMAT_TEXT;
  if (!out_path.empty()) {
    st = k3_report_write(report, out_path.c_str(), fmt);
  } else {
    const char* text = nullptr;
    st = k3_report_render(report, fmt, &text);
    if (st == K3_OK) std::fputs(text, stdout);
  }
  const int code = k3_report_exit_code(report);
  k3_report_free(report);
  if (st != K3_OK) return report_failure(st);
  return code;
}
