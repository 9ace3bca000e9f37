#include "curvsym/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "curvsym/util.hpp"

namespace curvsym {

const char* to_string(FitVerdict v) {
  switch (v) {
    case FitVerdict::proportional: return "proportional";
    case FitVerdict::zero_denominator_zero_numerator: return "zero_denominator_zero_numerator";
    case FitVerdict::zero_denominator_nonzero_numerator:
      return "zero_denominator_nonzero_numerator";
    case FitVerdict::not_proportional: return "not_proportional";
  }
  return "?";
}

namespace {

PseudoFit fit_spans(const std::vector<double>& num, const std::vector<double>& den,
                    const ToleranceProfile& tol, double scale) {
  PseudoFit fit;
  double num_max = 0.0, den_max = 0.0;
  for (double v : num) num_max = std::max(num_max, std::abs(v));
  for (double v : den) den_max = std::max(den_max, std::abs(v));
  fit.denominator_norm = den_max;
  if (scale <= 0.0) scale = std::max({1.0, num_max, den_max});

  const bool den_zero = den_max <= tol.zero_tol * scale;
  const bool num_zero = num_max <= tol.zero_tol * scale;
  if (den_zero) {
    fit.verdict = num_zero ? FitVerdict::zero_denominator_zero_numerator
                           : FitVerdict::zero_denominator_nonzero_numerator;
    return fit;
  }
  double nd = 0.0, dd = 0.0;
  for (size_t i = 0; i < num.size(); ++i) {
    nd += num[i] * den[i];
    dd += den[i] * den[i];
  }
  fit.coefficient = nd / dd;
  double viol = 0.0;
  for (size_t i = 0; i < num.size(); ++i)
    viol = std::max(viol, std::abs(num[i] - fit.coefficient * den[i]));
  fit.residual = viol / (1.0 + num_max);
  fit.verdict =
      fit.residual <= tol.prop_tol ? FitVerdict::proportional : FitVerdict::not_proportional;
  return fit;
}

}  // namespace

PseudoFit fit_pseudo_coefficient(const Tensor6& num, const Tensor6& den,
                                 const ToleranceProfile& tol, double scale) {
  if (num.dim() != den.dim())
    throw std::invalid_argument("fit_pseudo_coefficient: shape mismatch");
  return fit_spans(num.data(), den.data(), tol, scale);
}

PseudoFit fit_pseudo_coefficient(const Tensor4& num, const Tensor4& den,
                                 const ToleranceProfile& tol, double scale) {
  if (num.dim() != den.dim())
    throw std::invalid_argument("fit_pseudo_coefficient: shape mismatch");
  return fit_spans(num.data(), den.data(), tol, scale);
}

double sectional_K(const CurvatureBundle& b, const Plane& pi) {
  double den = contract(b.bigG, pi.v, pi.w, pi.w, pi.v);
  if (den <= 0.0) throw std::invalid_argument("degenerate plane");
  double num = contract(b.r04, pi.v, pi.w, pi.w, pi.v);
  return num / den;
}

std::optional<double> deszcz_L(const CurvatureBundle& b, const Plane& pi, const Plane& pibar,
                               const ToleranceProfile& tol) {
  double area_pi = plane_gram_det(b.g, pi);
  double area_bar = plane_gram_det(b.g, pibar);
  if (area_pi <= 0.0 || area_bar <= 0.0) throw std::invalid_argument("degenerate plane");
  double den = contract(b.tach_r, pi.v, pi.w, pi.w, pi.v, pibar.v, pibar.w);
  // scaled curvature-dependence guard: |den| must clear the noise floor of the
  // contraction, which scales with the tensor norm and both plane areas
  double guard =
      tol.guard_tol * (1.0 + b.tach_r.max_abs()) * std::sqrt(area_pi) * std::sqrt(area_bar);
  if (std::abs(den) <= guard) return std::nullopt;
  double num = contract(b.rr, pi.v, pi.w, pi.w, pi.v, pibar.v, pibar.w);
  return num / den;
}

RicciSpectrum ricci_spectrum(const CurvatureBundle& b, const ToleranceProfile& tol) {
  const int n = b.dim();
  RicciSpectrum out;
  // mixed Ricci operator g^{-1} S is g-self-adjoint: solve S v = lambda g v
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> eig(b.ricci, b.g);
  if (eig.info() != Eigen::Success)
    throw std::runtime_error("Ricci eigenvalue solver failed");
  out.eigenvalues.assign(eig.eigenvalues().data(), eig.eigenvalues().data() + n);
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());

  double lam_max = 0.0;
  for (double v : out.eigenvalues) lam_max = std::max(lam_max, std::abs(v));
  const double gap = tol.eig_cluster_tol * (1.0 + lam_max);

  size_t i = 0;
  while (i < out.eigenvalues.size()) {
    size_t j = i + 1;
    double sum = out.eigenvalues[i];
    while (j < out.eigenvalues.size() && out.eigenvalues[j] - out.eigenvalues[j - 1] <= gap) {
      sum += out.eigenvalues[j];
      ++j;
    }
    out.cluster_values.push_back(sum / double(j - i));
    out.multiplicities.push_back(int(j - i));
    i = j;
  }
  out.einstein = out.cluster_values.size() == 1;
  out.quasi_einstein = false;
  for (int m : out.multiplicities)
    if (m >= n - 1) out.quasi_einstein = true;
  return out;
}

int nullity_index(const CurvatureBundle& b, const ToleranceProfile& tol) {
  const int n = b.dim();
  // kernel of the n -> n^3 map z |-> R(z, e_b) e_c
  Eigen::MatrixXd M(n * n * n, n);
  for (int a = 0; a < n; ++a)
    for (int bb = 0; bb < n; ++bb)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) M((bb * n + c) * n + d, a) = b.r13(a, bb, c, d);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(M);
  double smax = svd.singularValues().size() ? svd.singularValues()[0] : 0.0;
  double cut = tol.nullity_tol * (1.0 + smax);
  int rank = 0;
  for (int i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > cut) ++rank;
  return n - rank;
}

Plane random_plane(int n, uint64_t& state) {
  auto normal = [&state]() {
    // Box-Muller from two splitmix doubles
    double u1 = std::max(unit_double(splitmix64(state)), 1e-300);
    double u2 = unit_double(splitmix64(state));
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
  };
  Plane pi;
  pi.v.resize(n);
  pi.w.resize(n);
  for (int i = 0; i < n; ++i) pi.v[i] = normal();
  for (int i = 0; i < n; ++i) pi.w[i] = normal();
  return pi;
}

namespace {

PointClassification classify_point(const CurvatureBundle& b, int planes_per_point,
                                   const ToleranceProfile& tol, uint64_t plane_seed) {
  const int n = b.dim();
  PointClassification pc;
  pc.point = b.point;

  const double curv_scale = 1.0 + b.r04.max_abs();

  pc.flat = b.r04.max_abs() <= tol.zero_tol * (1.0 + b.bigG.max_abs());

  pc.fit_cc = fit_pseudo_coefficient(b.r04, b.bigG, tol);
  pc.constant_curvature = pc.fit_cc.verdict == FitVerdict::proportional;
  pc.curvature_constant = pc.flat ? 0.0 : pc.fit_cc.coefficient;

  pc.spectrum = ricci_spectrum(b, tol);
  pc.einstein = pc.spectrum.einstein;
  pc.quasi_einstein = pc.spectrum.quasi_einstein;

  pc.rr_relative_norm = b.rr.max_abs() / (curv_scale * curv_scale);
  pc.semi_symmetric = pc.rr_relative_norm <= tol.zero_tol;

  pc.fit_r = fit_pseudo_coefficient(b.rr, b.tach_r, tol);
  pc.pseudo_symmetric = pc.fit_r.holds();
  if (pc.fit_r.verdict == FitVerdict::proportional) pc.L_R = pc.fit_r.coefficient;

  pc.fit_c = fit_pseudo_coefficient(b.cc, b.tach_c, tol);
  pc.pseudo_symmetric_weyl = pc.fit_c.holds();
  if (pc.fit_c.verdict == FitVerdict::proportional) pc.L_C = pc.fit_c.coefficient;

  pc.nullity = nullity_index(b, tol);

  // monotone ladder (and einstein => quasi_einstein)
  pc.constant_curvature = pc.constant_curvature || pc.flat;
  pc.semi_symmetric = pc.semi_symmetric || pc.constant_curvature;
  pc.pseudo_symmetric = pc.pseudo_symmetric || pc.semi_symmetric;
  pc.quasi_einstein = pc.quasi_einstein || pc.einstein;

  // Deszcz curvature statistics over sampled plane pairs
  uint64_t state = plane_seed;
  double sum = 0.0, sumsq = 0.0;
  int dependent = 0;
  for (int s = 0; s < planes_per_point; ++s) {
    Plane pi = random_plane(n, state);
    Plane pibar = random_plane(n, state);
    if (plane_gram_det(b.g, pi) <= 1e-12 || plane_gram_det(b.g, pibar) <= 1e-12) continue;
    auto L = deszcz_L(b, pi, pibar, tol);
    if (!L) continue;
    ++dependent;
    sum += *L;
    sumsq += *L * *L;
  }
  pc.plane_samples = planes_per_point;
  pc.plane_dependent = dependent;
  if (dependent > 0) {
    pc.L_sample_mean = sum / dependent;
    double var = std::max(0.0, sumsq / dependent - pc.L_sample_mean * pc.L_sample_mean);
    pc.L_sample_stddev = std::sqrt(var);
  }
  return pc;
}

}  // namespace

ClassificationReport classify(const MetricField& field, const std::vector<ChartPoint>& points,
                              int planes_per_point, const DiffConfig& cfg, uint64_t seed) {
  if (planes_per_point < 0) throw std::invalid_argument("planes_per_point must be >= 0");
  ClassificationReport report;
  report.per_point.resize(points.size());

  parallel_for(points.size(), [&](size_t i) {
    CurvatureBundle b = curvature_bundle(field, points[i], cfg);
    uint64_t plane_seed = seed * 0x9e3779b97f4a7c15ull + i * 0xd1342543de82ef95ull + 1;
    report.per_point[i] = classify_point(b, planes_per_point, cfg.tol, plane_seed);
  });

  auto& agg = report.aggregate;
  if (!report.per_point.empty()) {
    agg.flat = agg.constant_curvature = agg.einstein = agg.quasi_einstein = true;
    agg.semi_symmetric = agg.pseudo_symmetric = agg.pseudo_symmetric_weyl = true;
  }
  for (const auto& pc : report.per_point) {
    agg.flat &= pc.flat;
    agg.constant_curvature &= pc.constant_curvature;
    agg.einstein &= pc.einstein;
    agg.quasi_einstein &= pc.quasi_einstein;
    agg.semi_symmetric &= pc.semi_symmetric;
    agg.pseudo_symmetric &= pc.pseudo_symmetric;
    agg.pseudo_symmetric_weyl &= pc.pseudo_symmetric_weyl;
    if (pc.fit_r.verdict == FitVerdict::zero_denominator_nonzero_numerator ||
        pc.fit_c.verdict == FitVerdict::zero_denominator_nonzero_numerator)
      agg.degenerate_fit = true;
  }

  // constancy of L_R across points
  std::vector<double> ls;
  for (const auto& pc : report.per_point)
    if (pc.L_R) ls.push_back(*pc.L_R);
  agg.L_R_defined_count = int(ls.size());
  if (!ls.empty()) {
    double mean = 0.0;
    for (double v : ls) mean += v;
    mean /= double(ls.size());
    double dev = 0.0;
    for (double v : ls) dev = std::max(dev, std::abs(v - mean));
    agg.L_R_mean = mean;
    agg.L_R_max_dev = dev;
    agg.constant_type = dev <= cfg.tol.const_type_tol * (1.0 + std::abs(mean));
  } else {
    // space-form regime everywhere: trivially of constant type
    agg.constant_type = agg.pseudo_symmetric;
  }

  // Schur: cross-point constancy of the fitted curvature constant
  agg.schur_applicable = field.dim() >= 3;
  if (agg.constant_curvature && !report.per_point.empty()) {
    double mean = 0.0;
    for (const auto& pc : report.per_point) mean += pc.curvature_constant;
    mean /= double(report.per_point.size());
    double dev = 0.0;
    for (const auto& pc : report.per_point)
      dev = std::max(dev, std::abs(pc.curvature_constant - mean));
    agg.schur_c_mean = mean;
    agg.schur_c_max_dev = dev;
    agg.schur_constant = dev <= cfg.tol.const_type_tol * (1.0 + std::abs(mean));
  }
  return report;
}

}  // namespace curvsym
