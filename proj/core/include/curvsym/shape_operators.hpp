#pragma once

// Submanifold algebra from shape operators in orthonormal frames:
// principal-curvature case classification for hypersurfaces, Gauss-equation
// curvature assembly, normal curvature from the Ricci equation, and the
// Wintgen (DDVV) inequality with its ideal equality frames.

#include <Eigen/Dense>

#include <optional>
#include <string>
#include <vector>

#include "curvsym/tensors.hpp"

namespace curvsym {

struct ShapeOperatorSet {
  int n = 0;          // intrinsic dimension
  int m = 0;          // codimension
  double ambient_c = 0.0;
  std::vector<Eigen::MatrixXd> ops;  // m symmetric n x n operators

  /// Symmetrizes and validates.
  static ShapeOperatorSet make(int n, int m, double ambient_c,
                               std::vector<Eigen::MatrixXd> ops);
};

struct PrincipalCaseResult {
  int case_id = 0;  // 1..7, or 0 for "none"
  bool constant_curvature = false;  // cases 1-3
  bool semi_symmetric = false;      // cases 1-5
  bool pseudo_symmetric = false;    // cases 1-7
  bool conformally_flat = false;    // case 6
  std::optional<double> L;          // lambda*mu when exactly two nonzero values
  std::vector<double> values;       // clustered distinct values
  std::vector<int> multiplicities;
  std::string diagnostic;           // non-empty on ambiguous clustering
};

/// Matches a hypersurface principal-curvature spectrum (n >= 3) against the
/// seven model patterns:
///   (1) (0,...,0)                        (2) (l,...,l), l != 0
///   (3) (l,0,...,0)                      (4) (l,..,l,0,..,0), l more than once
///   (5) (l,m,0,...,0), l != m both once  (6) (l,m,...,m)
///   (7) (l,..,l,m,..,m), both more than once
PrincipalCaseResult classify_principal_curvatures(const std::vector<double>& spectrum,
                                                  double tol = 1e-9);

/// Gauss equation in an orthonormal frame with ambient constant curvature:
///   R = c~ G0 + sum_alpha (1/2)(A_alpha ^ A_alpha),  G0 = (1/2)(I ^ I).
Tensor4 gauss_curvature_tensor(const ShapeOperatorSet& s);

/// Normal curvature via the Ricci equation:
/// R_perp(E_i, E_j; xi_a, xi_b) = [A_a, A_b]_(i,j).
struct NormalCurvature {
  int n = 0, m = 0;
  std::vector<double> c;  // indexed (i, j, alpha, beta)
  double operator()(int i, int j, int alpha, int beta) const {
    return c[((size_t(i) * n + j) * m + alpha) * m + beta];
  }
  double& at(int i, int j, int alpha, int beta) {
    return c[((size_t(i) * n + j) * m + alpha) * m + beta];
  }
};

NormalCurvature normal_curvature(const ShapeOperatorSet& s);

struct WintgenQuantities {
  double rho = 0.0;       // normalized scalar curvature
  double rho_perp = 0.0;  // normalized scalar normal curvature
  double h2 = 0.0;        // squared mean curvature
  double slack = 0.0;     // h2 - rho_perp + ambient_c - rho  (>= 0 by DDVV)
};

WintgenQuantities wintgen_quantities(const ShapeOperatorSet& s);

/// The ideal equality frames of the Wintgen inequality:
///   A1 = diag(l+m cos t, l-m cos t, l, ..., l)
///   A2 = diag(m sin t, -m sin t, 0, ..., 0)
///   A3 = m in the (1,2)/(2,1) slots, zero elsewhere; A4 = ... = Am = 0.
ShapeOperatorSet wintgen_ideal_frames(int n, int m, double lambda, double mu, double theta,
                                      double ambient_c = 0.0);

/// Seeded random symmetric operator set (entries in [-1, 1]) for the
/// randomized DDVV property suite.
ShapeOperatorSet random_shape_operator_set(int n, int m, uint64_t& state);

}  // namespace curvsym
