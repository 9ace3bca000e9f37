#include "curvsym/shape_operators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "curvsym/util.hpp"

namespace curvsym {

ShapeOperatorSet ShapeOperatorSet::make(int n, int m, double ambient_c,
                                        std::vector<Eigen::MatrixXd> ops) {
  if (n < 2) throw std::invalid_argument("shape operators need n >= 2");
  if (m < 1) throw std::invalid_argument("shape operators need m >= 1");
  if (int(ops.size()) != m) throw std::invalid_argument("operator count != m");
  for (auto& A : ops) {
    if (A.rows() != n || A.cols() != n)
      throw std::invalid_argument("shape operator has wrong dimensions");
    A = ((A + A.transpose()) / 2.0).eval();
  }
  return ShapeOperatorSet{n, m, ambient_c, std::move(ops)};
}

PrincipalCaseResult classify_principal_curvatures(const std::vector<double>& spectrum,
                                                  double tol) {
  const int n = int(spectrum.size());
  if (n < 3) throw std::invalid_argument("hypersurface case table needs n >= 3");

  std::vector<double> sorted = spectrum;
  std::sort(sorted.begin(), sorted.end());

  PrincipalCaseResult res;
  // cluster
  size_t i = 0;
  while (i < sorted.size()) {
    size_t j = i + 1;
    double sum = sorted[i];
    while (j < sorted.size() && sorted[j] - sorted[j - 1] <= tol) {
      sum += sorted[j];
      ++j;
    }
    res.values.push_back(sum / double(j - i));
    res.multiplicities.push_back(int(j - i));
    i = j;
  }
  // ambiguity diagnostic: representatives closer than 10x the merge width
  for (size_t a = 0; a + 1 < res.values.size(); ++a)
    if (res.values[a + 1] - res.values[a] < 10.0 * tol)
      res.diagnostic = "ambiguous clustering: adjacent values within 10x tolerance";
  for (double v : res.values)
    if (v != 0.0 && std::abs(v) < 10.0 * tol && res.diagnostic.empty())
      res.diagnostic = "ambiguous clustering: near-zero value within 10x tolerance";

  int zeros = 0;
  std::vector<std::pair<double, int>> nonzero;  // (value, count)
  for (size_t k = 0; k < res.values.size(); ++k) {
    if (std::abs(res.values[k]) <= tol)
      zeros += res.multiplicities[k];
    else
      nonzero.push_back({res.values[k], res.multiplicities[k]});
  }

  const int k = int(nonzero.size());
  if (k == 0) {
    res.case_id = 1;
  } else if (k == 1 && zeros == 0) {
    res.case_id = 2;
  } else if (k == 1 && nonzero[0].second == 1) {
    res.case_id = 3;
  } else if (k == 1 && nonzero[0].second >= 2 && zeros >= 1) {
    res.case_id = 4;
  } else if (k == 2 && nonzero[0].second == 1 && nonzero[1].second == 1 && zeros >= 1) {
    res.case_id = 5;
  } else if (k == 2 && zeros == 0 &&
             ((nonzero[0].second == 1 && nonzero[1].second == n - 1) ||
              (nonzero[1].second == 1 && nonzero[0].second == n - 1))) {
    res.case_id = 6;
  } else if (k == 2 && zeros == 0 && nonzero[0].second >= 2 && nonzero[1].second >= 2) {
    res.case_id = 7;
  } else {
    res.case_id = 0;
  }

  res.constant_curvature = res.case_id >= 1 && res.case_id <= 3;
  res.semi_symmetric = res.case_id >= 1 && res.case_id <= 5;
  res.pseudo_symmetric = res.case_id >= 1 && res.case_id <= 7;
  res.conformally_flat = res.case_id == 6;
  if (k == 2) res.L = nonzero[0].first * nonzero[1].first;
  return res;
}

Tensor4 gauss_curvature_tensor(const ShapeOperatorSet& s) {
  const int n = s.n;
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(n, n);
  Tensor4 R = 0.5 * s.ambient_c * kulkarni_nomizu(id, id);
  for (const auto& A : s.ops) {
    Tensor4 AA = kulkarni_nomizu(A, A);
    for (size_t i = 0; i < R.data().size(); ++i) R.data()[i] += 0.5 * AA.data()[i];
  }
  return R;
}

NormalCurvature normal_curvature(const ShapeOperatorSet& s) {
  NormalCurvature out;
  out.n = s.n;
  out.m = s.m;
  out.c.assign(size_t(s.n) * s.n * s.m * s.m, 0.0);
  for (int alpha = 0; alpha < s.m; ++alpha)
    for (int beta = alpha + 1; beta < s.m; ++beta) {
      Eigen::MatrixXd comm = s.ops[alpha] * s.ops[beta] - s.ops[beta] * s.ops[alpha];
      for (int i = 0; i < s.n; ++i)
        for (int j = 0; j < s.n; ++j) {
          out.at(i, j, alpha, beta) = comm(i, j);
          out.at(i, j, beta, alpha) = -comm(i, j);
        }
    }
  return out;
}

WintgenQuantities wintgen_quantities(const ShapeOperatorSet& s) {
  const int n = s.n;
  const double pairs = double(n) * (n - 1) / 2.0;

  Tensor4 R = gauss_curvature_tensor(s);
  double sumK = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) sumK += R(i, j, j, i);

  NormalCurvature Rp = normal_curvature(s);
  double sumsq = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int a = 0; a < s.m; ++a)
        for (int b = a + 1; b < s.m; ++b) {
          double v = Rp(i, j, a, b);
          sumsq += v * v;
        }

  WintgenQuantities q;
  q.rho = sumK / pairs;
  q.rho_perp = std::sqrt(sumsq) / pairs;
  double h2 = 0.0;
  for (const auto& A : s.ops) {
    double t = A.trace() / double(n);
    h2 += t * t;
  }
  q.h2 = h2;
  q.slack = q.h2 - q.rho_perp + s.ambient_c - q.rho;
  return q;
}

ShapeOperatorSet wintgen_ideal_frames(int n, int m, double lambda, double mu, double theta,
                                      double ambient_c) {
  if (n < 2) throw std::invalid_argument("wintgen_ideal_frames needs n >= 2");
  if (m < 3) throw std::invalid_argument("the ideal frames need m >= 3 normal directions");
  std::vector<Eigen::MatrixXd> ops(m, Eigen::MatrixXd::Zero(n, n));
  ops[0] = lambda * Eigen::MatrixXd::Identity(n, n);
  ops[0](0, 0) = lambda + mu * std::cos(theta);
  ops[0](1, 1) = lambda - mu * std::cos(theta);
  ops[1](0, 0) = mu * std::sin(theta);
  ops[1](1, 1) = -mu * std::sin(theta);
  ops[2](0, 1) = mu;
  ops[2](1, 0) = mu;
  return ShapeOperatorSet::make(n, m, ambient_c, std::move(ops));
}

ShapeOperatorSet random_shape_operator_set(int n, int m, uint64_t& state) {
  std::vector<Eigen::MatrixXd> ops;
  ops.reserve(m);
  for (int a = 0; a < m; ++a) {
    Eigen::MatrixXd M(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) M(i, j) = 2.0 * unit_double(splitmix64(state)) - 1.0;
    ops.push_back((M + M.transpose()) / 2.0);
  }
  return ShapeOperatorSet::make(n, m, 0.0, std::move(ops));
}

}  // namespace curvsym
