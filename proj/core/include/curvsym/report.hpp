#pragma once

// Deterministic report documents.  All commands emit the same top-level JSON
// schema {"metric", "params", "mode", "seed", "points", "per_point",
// "aggregate", "suite"}; floats are serialized with 17 significant digits so
// identical runs produce byte-identical output.

#include <string>
#include <vector>

#include "curvsym/shape_operators.hpp"
#include "curvsym/symmetry.hpp"

namespace curvsym {

struct ReportMeta {
  std::string metric;
  std::vector<std::pair<std::string, double>> params;
  std::string mode = "jet";
  uint64_t seed = 0;
};

/// One named line of a verification / sweep table.
struct SuiteRow {
  std::string name;
  double value = std::numeric_limits<double>::quiet_NaN();
  double expected = std::numeric_limits<double>::quiet_NaN();
  double tolerance = std::numeric_limits<double>::quiet_NaN();
  bool pass = true;
  std::string note;
};

std::string report_json(const ReportMeta& meta, const std::vector<ChartPoint>& points,
                        const ClassificationReport* classification,
                        const std::vector<SuiteRow>& suite);

/// Flat per-point CSV projection of a classification report.
std::string classification_csv(const std::vector<ChartPoint>& points,
                               const ClassificationReport& report);

std::string suite_csv(const std::vector<SuiteRow>& suite);

/// Plain-text table for human consumption on stderr/stdout.
std::string suite_table(const std::vector<SuiteRow>& suite);

/// Parses a shape-operator set from its JSON document:
///   {"n": 3, "m": 3, "ambient_c": 0.0, "ops": [[[...],...], ...]}
ShapeOperatorSet shape_set_from_json(const std::string& text);

std::string wintgen_json(const ShapeOperatorSet& s, const WintgenQuantities& q);

}  // namespace curvsym
