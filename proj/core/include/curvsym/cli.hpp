#pragma once

// Command drivers behind the curvsym tool: analyze, verify, catalog, squaroid
// and wintgen.  Kept in the core library so the suites are callable from
// tests; tools/curvsym.cpp is a thin shim over run_cli.
//
// Exit codes: 0 success, 2 threshold diagnostics (failed identity rows,
// degenerate fits, DDVV violations), 1 hard errors.

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "curvsym/report.hpp"

namespace curvsym {

struct RunConfig {
  std::string command;  // analyze | verify | catalog | squaroid | wintgen
  std::string metric = "sol";
  std::optional<int> dim;
  int points = 20;
  int planes = 50;
  uint64_t seed = 1;
  DiffMode mode = DiffMode::jet;
  double fd_step = 1e-4;
  std::string tol_profile;  // empty: strict for jet, fd for finite differences
  std::string output;       // empty: stdout
  std::string format = "json";

  // squaroid command
  std::string squaroid_kind = "riemann";  // riemann | deszcz
  double eps = 1e-1;
  double delta = 1e-2;

  // wintgen command
  std::string input_file;  // shape-operator JSON; empty runs the random suite
  int count = 1000;

  DiffConfig diff_config() const;
};

/// Loads the metric named by the config: an existing file path is parsed as a
/// metric-spec document, anything else is resolved against the catalog.
MetricField load_metric(const RunConfig& cfg);

/// Named identity residuals (Bianchi, curvature symmetries, the a)-d)
/// properties of R.R and ^g.R, ^g.G = 0, Weyl traces, metric compatibility,
/// transport isometry), maximized over sampled points.
std::vector<SuiteRow> identity_suite(const MetricField& field, const DiffConfig& cfg,
                                     int points, uint64_t seed);

/// The Thurston-table verification rows (the eight model geometries plus the
/// space-form realizations), including the rescaling protocol for the
/// entries whose normalization the constant-type theorems leave open.
std::vector<SuiteRow> catalog_table(const DiffConfig& cfg, int points, int planes,
                                    uint64_t seed);

int run_analyze(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_catalog(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_squaroid(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int run_wintgen(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Full argv-style entry point (excluding the program name).
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace curvsym
