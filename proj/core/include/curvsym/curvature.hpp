#pragma once

// Differentiation engine and assembly of the full pointwise curvature bundle:
// Christoffel symbols, the (1,3) and (0,4) curvature tensors, Ricci, scalar
// and Weyl curvature, G = (1/2) g^g, the derivative tensors R.R and the
// Tachibana tensor ^g.R (plus the Weyl and Ricci variants).
//
// Curvature conventions (pinned by the acceptance suite):
//   R(e_a, e_b) e_c = (d_a Gam^d_bc - d_b Gam^d_ac
//                      + Gam^e_bc Gam^d_ae - Gam^e_ac Gam^d_be) e_d
//   r13(a,b,c,d) = d-component of R(e_a,e_b)e_c
//   r04(a,b,c,d) = g(R(e_a,e_b)e_c, e_d)
//   Ric(i,j)     = g^{ab} r04(a,i,j,b)       (unit sphere: Ric = (n-1) g)
//   K(v,w)       = r04(v,w,w,v) / G(v,w,w,v) (unit sphere: +1)

#include <Eigen/Dense>

#include <string>
#include <vector>

#include "curvsym/metric.hpp"
#include "curvsym/tensors.hpp"

namespace curvsym {

enum class DiffMode { jet, finite_difference };

struct ToleranceProfile {
  std::string name;
  double zero_tol;        // relative magnitude below which a tensor counts as zero
  double prop_tol;        // proportionality fit residual bound
  double eig_cluster_tol; // Ricci eigenvalue clustering
  double const_type_tol;  // cross-point constancy of fitted coefficients
  double guard_tol;       // curvature-dependence guard for plane-pair ratios
  double nullity_tol;     // singular value cutoff for the nullity kernel

  static ToleranceProfile strict();
  static ToleranceProfile fd();
  static ToleranceProfile by_name(const std::string& name);
};

struct DiffConfig {
  DiffMode mode = DiffMode::jet;
  double fd_step = 1e-4;
  ToleranceProfile tol = ToleranceProfile::strict();

  static DiffConfig jet_mode() { return DiffConfig{}; }
  static DiffConfig fd_mode(double step = 1e-4) {
    return DiffConfig{DiffMode::finite_difference, step, ToleranceProfile::fd()};
  }
};

/// Metric 2-jet at a point.  jet mode evaluates the component expressions over
/// second-order truncated polynomial scalars (exact derivatives); finite
/// difference mode uses central differences at step fd_step*max(1,|p_a|) with
/// two-step Richardson extrapolation, and serves as the independent oracle.
MetricJets jet2_at(const MetricField& field, const ChartPoint& p, const DiffConfig& cfg);

/// Levi-Civita connection coefficients Gamma[i](j,k) from a metric jet.
std::vector<Eigen::MatrixXd> christoffel(const MetricJets& jets);

/// Gamma from (g, dg) only; shared by the transport integrator.
std::vector<Eigen::MatrixXd> christoffel(const Eigen::MatrixXd& g,
                                         const std::vector<Eigen::MatrixXd>& dg);

struct CurvatureBundle {
  ChartPoint point;
  Eigen::MatrixXd g, ginv;
  std::vector<Eigen::MatrixXd> gamma;  // [i](j,k)
  Tensor4 r13;                         // r13(a,b,c,d): R(e_a,e_b)e_c components
  Tensor4 r04;
  Eigen::MatrixXd ricci;
  double scalar = 0.0;
  Tensor4 weyl;  // zero tensor for n < 3 by convention; vanishes for n == 3
  Tensor4 bigG;  // (1/2) g^g
  Tensor6 rr;      // R.R
  Tensor6 tach_r;  // ^g.R
  Tensor6 cc;      // C.C
  Tensor6 tach_c;  // ^g.C
  Tensor4 rs;      // rs(i,j,e,f)     = (R(e_e,e_f).Ric)(e_i,e_j)
  Tensor4 tach_s;  // tach_s(i,j,e,f) = ((e_e ^g e_f).Ric)(e_i,e_j)

  int dim() const { return int(g.rows()); }

  /// The curvature operator R(e_e, e_f) as an endomorphism matrix.
  Endomorphism curvature_operator(int e, int f) const;
};

/// Full bundle at a chart point.
CurvatureBundle curvature_bundle(const MetricField& field, const ChartPoint& p,
                                 const DiffConfig& cfg);

/// Algebra-only bundle from a prescribed curvature-like (0,4) tensor at a
/// point with metric g (used for Gauss-equation curvature from shape
/// operators; the connection parts are left empty).
CurvatureBundle bundle_from_r04(const Eigen::MatrixXd& g, const Tensor4& r04);

/// Weyl conformal curvature:
///   C = R - (g ^ S)/(n-2) + tau (g ^ g) / (2(n-1)(n-2))
/// with ^ the Kulkarni-Nomizu product above.  Requires n >= 3.
Tensor4 weyl_tensor(const Tensor4& r04, const Eigen::MatrixXd& ricci, double tau,
                    const Eigen::MatrixXd& g);

/// Max relative residual of all single g^{-1} traces of T (Weyl is trace-free).
double tracefree_residual(const Tensor4& T, const Eigen::MatrixXd& ginv);

/// Residual of nabla g = 0 reconstructed from gamma (defining property).
double metric_compat_residual(const MetricJets& jets,
                              const std::vector<Eigen::MatrixXd>& gamma);

}  // namespace curvsym
