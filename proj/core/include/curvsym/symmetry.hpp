#pragma once

// Sectional curvatures of Riemann and Deszcz, pseudo-symmetry coefficient
// fitting, Ricci spectrum, nullity index, and the classification ladder
// flat => constant curvature => semi-symmetric => pseudo-symmetric.

#include <optional>
#include <vector>

#include "curvsym/curvature.hpp"

namespace curvsym {

enum class FitVerdict {
  proportional,
  zero_denominator_zero_numerator,   // space-form regime: both sides vanish
  zero_denominator_nonzero_numerator,
  not_proportional,
};

const char* to_string(FitVerdict v);

struct PseudoFit {
  double coefficient = 0.0;
  double residual = 0.0;
  double denominator_norm = 0.0;
  FitVerdict verdict = FitVerdict::not_proportional;

  bool holds() const {
    return verdict == FitVerdict::proportional ||
           verdict == FitVerdict::zero_denominator_zero_numerator;
  }
};

/// Least-squares proportionality fit L = <num, den>/<den, den> with residual
/// ||num - L den||_inf / (1 + ||num||_inf).  `scale` sets the zero threshold
/// reference; by default max(1, ||num||, ||den||).
PseudoFit fit_pseudo_coefficient(const Tensor6& num, const Tensor6& den,
                                 const ToleranceProfile& tol, double scale = -1.0);
PseudoFit fit_pseudo_coefficient(const Tensor4& num, const Tensor4& den,
                                 const ToleranceProfile& tol, double scale = -1.0);

/// K(p, pi) = R(v,w,w,v) / G(v,w,w,v); basis invariant.
double sectional_K(const CurvatureBundle& b, const Plane& pi);

/// Deszcz double sectional curvature
///   L(p, pi, pibar) = (R.R)(v,w,w,v;x,y) / (^g.R)(v,w,w,v;x,y).
/// Returns nullopt when pi is curvature independent of pibar (the denominator
/// falls below the scaled guard threshold).
std::optional<double> deszcz_L(const CurvatureBundle& b, const Plane& pi, const Plane& pibar,
                               const ToleranceProfile& tol);

struct RicciSpectrum {
  std::vector<double> eigenvalues;      // ascending, one per dimension
  std::vector<double> cluster_values;   // one per cluster
  std::vector<int> multiplicities;      // parallel to cluster_values
  bool einstein = false;
  bool quasi_einstein = false;          // some cluster has multiplicity >= n-1
};

/// Eigenvalues of the mixed Ricci operator g^{-1} S with multiplicities.
RicciSpectrum ricci_spectrum(const CurvatureBundle& b, const ToleranceProfile& tol);

/// Dimension of { z : R(z, e_b) e_c = 0 for all b, c }.
int nullity_index(const CurvatureBundle& b, const ToleranceProfile& tol);

struct PointClassification {
  ChartPoint point;
  bool flat = false;
  bool constant_curvature = false;
  bool einstein = false;
  bool quasi_einstein = false;
  bool semi_symmetric = false;
  bool pseudo_symmetric = false;
  bool pseudo_symmetric_weyl = false;
  double curvature_constant = 0.0;  // fitted c in R = c G (when constant_curvature)
  PseudoFit fit_cc;                 // r04 against G
  PseudoFit fit_r;                  // R.R against ^g.R
  PseudoFit fit_c;                  // C.C against ^g.C
  std::optional<double> L_R;        // defined unless the space-form regime holds
  std::optional<double> L_C;
  RicciSpectrum spectrum;
  int nullity = 0;
  double rr_relative_norm = 0.0;  // ||R.R|| / (1 + ||R||)^2
  // statistics of plane-sampled Deszcz curvatures at this point
  int plane_samples = 0;
  int plane_dependent = 0;   // samples with curvature-dependent plane pairs
  double L_sample_mean = 0.0;
  double L_sample_stddev = 0.0;
};

struct ClassificationReport {
  std::vector<PointClassification> per_point;

  struct Aggregate {
    // flags that hold at every sampled point
    bool flat = false;
    bool constant_curvature = false;
    bool einstein = false;
    bool quasi_einstein = false;
    bool semi_symmetric = false;
    bool pseudo_symmetric = false;
    bool pseudo_symmetric_weyl = false;
    // constancy of the fitted L_R across points ("constant type")
    bool constant_type = false;
    int L_R_defined_count = 0;
    double L_R_mean = 0.0;
    double L_R_max_dev = 0.0;
    // Schur check: cross-point constancy of the fitted c (n >= 3 only)
    bool schur_applicable = false;
    bool schur_constant = false;
    double schur_c_mean = 0.0;
    double schur_c_max_dev = 0.0;
    // diagnostics: any degenerate fit encountered
    bool degenerate_fit = false;
  } aggregate;
};

/// Classifies the space at the given points.  Bundles are computed
/// concurrently; the report order matches the input point order.
ClassificationReport classify(const MetricField& field, const std::vector<ChartPoint>& points,
                              int planes_per_point, const DiffConfig& cfg, uint64_t seed);

/// Seeded random plane at dimension n (components standard normal).
Plane random_plane(int n, uint64_t& state);

}  // namespace curvsym
