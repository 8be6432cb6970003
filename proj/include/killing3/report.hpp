#pragma once

// Metric-spec parsing, run configuration and structured reports for the CLI.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "killing3/metric.hpp"

namespace killing3 {

enum class Command { Analyze, Verify, Flatness, Geodesic, Family, Lorentz };
const char* to_string(Command c);
Command parse_command(const std::string& name);

enum class OutputFormat { Text, JsonLines };
OutputFormat parse_format(const std::string& name);

/// `key = value` lines with `#` comments. Keys: catalog, signature, grid_csv and the catalog's parameters.
/// grid_csv paths are resolved against base_dir.
MetricSpec parse_metric_spec(const std::string& text, const std::string& base_dir = "");

std::string read_text_file(const std::string& path);
/// Writes to a temporary sibling and renames it over path.
void write_atomic(const std::string& path, const std::string& content);

struct GridBox {
  double r_min = 0.0, r_max = 1.0;
  std::size_t n_r = 2;
  double theta_min = 0.0, theta_max = 1.0;
  std::size_t n_theta = 2;

  std::vector<Point> lattice() const;
};

/// "rmin:rmax:nr,tmin:tmax:nt"; counts must be >= 2.
GridBox parse_grid(const std::string& text);

/// Seeded Halton(2,3) points with a random shift modulo the box.
std::vector<Point> halton_points(const GridBox& box, std::size_t n, std::uint64_t seed);

struct RunConfig {
  Command command = Command::Analyze;
  std::string spec_path;
  std::string spec_text;  // used instead of spec_path when non-empty
  GridBox grid;
  std::map<std::string, double> tolerances;
  OutputFormat format = OutputFormat::Text;
  std::string out_path;
  std::uint64_t seed = 42;
  std::optional<std::string> expect;
  std::string trajectory_dir;
  std::size_t threads = 0;    // 0: KILLING3_THREADS or hardware concurrency
  std::size_t samples = 100;  // quasi-random points added to the lattice
  std::size_t geodesics = 4;
  double length = 100.0;
};

/// Defaults for every tolerance name; overrides with other names are rejected.
std::map<std::string, double> default_tolerances();

struct PointRecord {
  Point point;
  std::map<std::string, double> values;
  std::map<std::string, double> residuals;
};

struct ReportSummary {
  std::map<std::string, double> max_residuals;  // max over records
  std::map<std::string, double> metrics;
  std::map<std::string, std::string> verdicts;
  std::vector<std::string> failures;
  bool passed = false;
};

struct Report {
  Command command = Command::Analyze;
  std::string spec_name;
  Signature signature = Signature::Riemannian;
  std::uint64_t seed = 42;
  std::vector<PointRecord> records;
  ReportSummary summary;

  int exit_code() const { return summary.passed ? 0 : 1; }
};

std::map<std::string, double> max_residuals(const std::vector<PointRecord>& records);

Report run(const RunConfig& config);

std::string to_text(const Report& report);
/// One JSON object per record, then a summary object.
std::string to_jsonl(const Report& report);
Report report_from_jsonl(const std::string& text);

std::size_t thread_count(std::size_t requested);

}  // namespace killing3
