#pragma once

// Coordinate charts and metric fields.  A MetricField is an n x n symmetric
// matrix of scalar expressions over a rectangular chart domain, evaluable over
// plain reals and over first/second order jets.  Includes the built-in metric
// catalog and the metric-spec file parser.

#include <Eigen/Dense>

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curvsym/expr.hpp"

namespace curvsym {

using ChartPoint = Eigen::VectorXd;

struct DomainBox {
  Eigen::VectorXd lo, hi;

  bool contains(const ChartPoint& p, double margin = 0.0) const {
    for (int i = 0; i < p.size(); ++i) {
      double w = hi[i] - lo[i];
      if (p[i] < lo[i] + margin * w || p[i] > hi[i] - margin * w) return false;
    }
    return true;
  }
};

/// First and second coordinate derivatives of the metric components at a
/// point: g, dg[a](i,j) = d_a g_ij, d2g[a][b](i,j) = d_a d_b g_ij.
struct MetricJets {
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  std::vector<std::vector<Eigen::MatrixXd>> d2g;
};

class MetricField {
public:
  /// `entries` is packed upper-triangular (i <= j, row major); a null entry is
  /// the zero expression.  Every diagonal entry must be non-null.
  MetricField(std::string name, int dim, DomainBox box,
              std::vector<std::string> coord_names,
              std::vector<std::string> param_names, std::vector<double> param_values,
              std::vector<ExprPtr> entries);

  int dim() const { return n_; }
  const std::string& name() const { return name_; }
  const DomainBox& domain() const { return box_; }
  const std::vector<std::string>& coord_names() const { return coords_; }
  const std::vector<std::string>& param_names() const { return params_; }
  const std::vector<double>& param_values() const { return param_values_; }

  /// Expression for entry (i, j); null means identically zero.  Symmetric
  /// storage: entry(i, j) and entry(j, i) are the same node.
  const ExprPtr& entry(int i, int j) const;

  /// Evaluated metric matrix; exactly symmetric by mirrored storage.
  Eigen::MatrixXd value(const ChartPoint& p) const;

  /// Metric together with first derivatives (exact, via Jet1 arithmetic).
  void value_and_grad(const ChartPoint& p, Eigen::MatrixXd& g,
                      std::vector<Eigen::MatrixXd>& dg) const;

  /// Full second-order jet (exact, via Jet2 arithmetic).
  MetricJets jets(const ChartPoint& p) const;

  /// The same field with every component multiplied by k (k > 0).
  MetricField scaled(double k, const std::string& new_name) const;

private:
  size_t tri_index(int i, int j) const;

  std::string name_;
  int n_;
  DomainBox box_;
  std::vector<std::string> coords_;
  std::vector<std::string> params_;
  std::vector<double> param_values_;
  std::vector<ExprPtr> entries_;  // packed i <= j
};

/// Built-in catalog.  Names and their parameters:
///   euclidean        n
///   space_form       n, c
///   thurston         m, l
///   sol              (none)
///   product_s2xe1    (none; thurston m=1/4, l=0)
///   product_h2xe1    (none; thurston m=-1/4, l=0)
MetricField catalog_metric(const std::string& name,
                           const std::map<std::string, double>& params = {});

/// Parses "name", "name(a,b)" or "name(m=0.25,l=1)" into a catalog call.
MetricField catalog_metric_from_string(const std::string& text,
                                       std::optional<int> dim_override = {});

/// Parses a metric-spec document (see file-format notes in the README).
MetricField parse_metric_spec(const std::string& text,
                              const std::string& name = "user_metric");

/// Renders a field back to metric-spec text; re-parsing evaluates identically.
std::string print_metric_spec(const MetricField& field);

/// Deterministic low-discrepancy sample of points strictly inside the domain
/// at which the metric is positive definite.  Points failing the positive
/// definiteness check are rejected and resampled up to a hard cap.
std::vector<ChartPoint> sample_points(const MetricField& field, int count, uint64_t seed);

}  // namespace curvsym
