#include "curvsym/curvature.hpp"

#include <cmath>
#include <stdexcept>

namespace curvsym {

ToleranceProfile ToleranceProfile::strict() {
  return ToleranceProfile{"strict", 1e-8, 1e-7, 1e-6, 1e-6, 1e-10, 1e-8};
}

ToleranceProfile ToleranceProfile::fd() {
  return ToleranceProfile{"fd", 1e-4, 1e-3, 1e-4, 1e-4, 1e-10, 1e-6};
}

ToleranceProfile ToleranceProfile::by_name(const std::string& name) {
  if (name == "strict") return strict();
  if (name == "fd") return fd();
  throw std::invalid_argument("unknown tolerance profile '" + name + "'");
}

namespace {

MetricJets fd_jets_at_step(const MetricField& field, const ChartPoint& p,
                           const Eigen::VectorXd& h) {
  const int n = field.dim();
  MetricJets out;
  out.g = field.value(p);
  out.dg.assign(n, Eigen::MatrixXd::Zero(n, n));
  out.d2g.assign(n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));

  for (int a = 0; a < n; ++a) {
    ChartPoint pp = p, pm = p;
    pp[a] += h[a];
    pm[a] -= h[a];
    Eigen::MatrixXd gp = field.value(pp);
    Eigen::MatrixXd gm = field.value(pm);
    out.dg[a] = (gp - gm) / (2.0 * h[a]);
    out.d2g[a][a] = (gp - 2.0 * out.g + gm) / (h[a] * h[a]);
  }
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      ChartPoint q = p;
      q[a] += h[a]; q[b] += h[b];
      Eigen::MatrixXd gpp = field.value(q);
      q = p; q[a] += h[a]; q[b] -= h[b];
      Eigen::MatrixXd gpm = field.value(q);
      q = p; q[a] -= h[a]; q[b] += h[b];
      Eigen::MatrixXd gmp = field.value(q);
      q = p; q[a] -= h[a]; q[b] -= h[b];
      Eigen::MatrixXd gmm = field.value(q);
      out.d2g[a][b] = (gpp - gpm - gmp + gmm) / (4.0 * h[a] * h[b]);
      out.d2g[b][a] = out.d2g[a][b];
    }
  }
  return out;
}

Tensor4 raise_last_slot(const Tensor4& T, const Eigen::MatrixXd& ginv) {
  const int n = T.dim();
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int e = 0; e < n; ++e) s += T(a, b, c, e) * ginv(e, d);
          out(a, b, c, d) = s;
        }
  return out;
}

Tensor4 lower_last_slot(const Tensor4& T, const Eigen::MatrixXd& g) {
  const int n = T.dim();
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int e = 0; e < n; ++e) s += T(a, b, c, e) * g(e, d);
          out(a, b, c, d) = s;
        }
  return out;
}

// Everything downstream of (g, r13, r04): Ricci, scalar, G, Weyl and the six
// derivative tensors.
void fill_algebraic_parts(CurvatureBundle& b) {
  const int n = b.dim();
  b.ricci = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double s = 0.0;
      for (int a = 0; a < n; ++a)
        for (int c = 0; c < n; ++c) s += b.ginv(a, c) * b.r04(a, i, j, c);
      b.ricci(i, j) = s;
    }
  b.scalar = (b.ginv.array() * b.ricci.array()).sum();
  b.bigG = 0.5 * kulkarni_nomizu(b.g, b.g);

  auto curv_op = [&b](int e, int f) { return b.curvature_operator(e, f); };
  auto metric_op = [&b, n](int e, int f) {
    return metric_endomorphism(b.g, Eigen::VectorXd::Unit(n, e), Eigen::VectorXd::Unit(n, f));
  };

  b.rr = tensor06_from_operator(curv_op, b.r04);
  b.tach_r = tensor06_from_operator(metric_op, b.r04);

  if (n >= 3) {
    b.weyl = weyl_tensor(b.r04, b.ricci, b.scalar, b.g);
    Tensor4 c13 = raise_last_slot(b.weyl, b.ginv);
    auto weyl_op = [&c13, n](int e, int f) {
      Endomorphism E(n, n);
      for (int d = 0; d < n; ++d)
        for (int c = 0; c < n; ++c) E(d, c) = c13(e, f, c, d);
      return E;
    };
    b.cc = tensor06_from_operator(weyl_op, b.weyl);
    b.tach_c = tensor06_from_operator(metric_op, b.weyl);
  } else {
    b.weyl = Tensor4(n);
    b.cc = Tensor6(n);
    b.tach_c = Tensor6(n);
  }

  b.rs = Tensor4(n);
  b.tach_s = Tensor4(n);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f) {
      Eigen::MatrixXd rs_ef = act_on_02(curv_op(e, f), b.ricci);
      Eigen::MatrixXd ts_ef = act_on_02(metric_op(e, f), b.ricci);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          b.rs(i, j, e, f) = rs_ef(i, j);
          b.tach_s(i, j, e, f) = ts_ef(i, j);
        }
    }
}

Eigen::MatrixXd invert_metric(const Eigen::MatrixXd& g) {
  Eigen::FullPivLU<Eigen::MatrixXd> lu(g);
  if (!lu.isInvertible()) throw std::runtime_error("singular metric matrix");
  return lu.inverse();
}

}  // namespace

MetricJets jet2_at(const MetricField& field, const ChartPoint& p, const DiffConfig& cfg) {
  if (p.size() != field.dim()) throw std::invalid_argument("point dimension mismatch");
  if (cfg.mode == DiffMode::jet) {
    if (!field.domain().contains(p)) throw std::invalid_argument("point outside domain box");
    return field.jets(p);
  }
  if (cfg.fd_step < 1e-8 || cfg.fd_step > 1e-2)
    throw std::invalid_argument("fd_step outside [1e-8, 1e-2]");
  const int n = field.dim();
  Eigen::VectorXd h(n);
  for (int a = 0; a < n; ++a) h[a] = cfg.fd_step * std::max(1.0, std::abs(p[a]));
  for (int a = 0; a < n; ++a) {
    ChartPoint q = p, r = p;
    q[a] += h[a];
    r[a] -= h[a];
    if (!field.domain().contains(q) || !field.domain().contains(r))
      throw std::invalid_argument("point too close to the domain boundary for fd stencil");
  }
  // two-step Richardson: central differences are O(h^2), so
  // D = (4 D(h/2) - D(h)) / 3 cancels the leading term.
  MetricJets jh = fd_jets_at_step(field, p, h);
  MetricJets jh2 = fd_jets_at_step(field, p, (h / 2.0).eval());
  MetricJets out;
  out.g = jh.g;
  out.dg.resize(n);
  out.d2g.assign(n, std::vector<Eigen::MatrixXd>(n));
  for (int a = 0; a < n; ++a) {
    out.dg[a] = (4.0 * jh2.dg[a] - jh.dg[a]) / 3.0;
    for (int b = 0; b < n; ++b)
      out.d2g[a][b] = (4.0 * jh2.d2g[a][b] - jh.d2g[a][b]) / 3.0;
  }
  return out;
}

std::vector<Eigen::MatrixXd> christoffel(const Eigen::MatrixXd& g,
                                         const std::vector<Eigen::MatrixXd>& dg) {
  const int n = int(g.rows());
  Eigen::MatrixXd ginv = invert_metric(g);
  std::vector<Eigen::MatrixXd> gamma(n, Eigen::MatrixXd::Zero(n, n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = j; k < n; ++k) {
        double s = 0.0;
        for (int l = 0; l < n; ++l)
          s += ginv(i, l) * (dg[j](l, k) + dg[k](j, l) - dg[l](j, k));
        gamma[i](j, k) = 0.5 * s;
        gamma[i](k, j) = gamma[i](j, k);
      }
  return gamma;
}

std::vector<Eigen::MatrixXd> christoffel(const MetricJets& jets) {
  return christoffel(jets.g, jets.dg);
}

double metric_compat_residual(const MetricJets& jets,
                              const std::vector<Eigen::MatrixXd>& gamma) {
  const int n = int(jets.g.rows());
  double viol = 0.0, scale = 0.0;
  for (int a = 0; a < n; ++a) {
    scale = std::max(scale, jets.dg[a].cwiseAbs().maxCoeff());
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double r = jets.dg[a](i, j);
        for (int l = 0; l < n; ++l)
          r -= gamma[l](a, i) * jets.g(l, j) + gamma[l](a, j) * jets.g(i, l);
        viol = std::max(viol, std::abs(r));
      }
  }
  return viol / (1.0 + scale);
}

Endomorphism CurvatureBundle::curvature_operator(int e, int f) const {
  const int n = dim();
  Endomorphism E(n, n);
  for (int d = 0; d < n; ++d)
    for (int c = 0; c < n; ++c) E(d, c) = r13(e, f, c, d);
  return E;
}

Tensor4 weyl_tensor(const Tensor4& r04, const Eigen::MatrixXd& ricci, double tau,
                    const Eigen::MatrixXd& g) {
  const int n = int(g.rows());
  if (n < 3) throw std::invalid_argument("weyl_tensor requires n >= 3");
  Tensor4 gS = kulkarni_nomizu(g, ricci);
  Tensor4 gg = kulkarni_nomizu(g, g);
  Tensor4 C = r04;
  const double a = 1.0 / (n - 2);
  const double b = tau / (2.0 * (n - 1) * (n - 2));
  for (size_t i = 0; i < C.data().size(); ++i)
    C.data()[i] += -a * gS.data()[i] + b * gg.data()[i];
  return C;
}

double tracefree_residual(const Tensor4& T, const Eigen::MatrixXd& ginv) {
  const int n = T.dim();
  double viol = 0.0;
  static const int slots[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  for (const auto& pair : slots) {
    int s0 = pair[0], s1 = pair[1];
    int idx[4];
    for (int u = 0; u < n; ++u)
      for (int v = 0; v < n; ++v) {
        double s = 0.0;
        for (int a = 0; a < n; ++a)
          for (int b = 0; b < n; ++b) {
            int free_at = 0;
            for (int slot = 0; slot < 4; ++slot) {
              if (slot == s0) idx[slot] = a;
              else if (slot == s1) idx[slot] = b;
              else idx[slot] = (free_at++ == 0) ? u : v;
            }
            s += ginv(a, b) * T(idx[0], idx[1], idx[2], idx[3]);
          }
        viol = std::max(viol, std::abs(s));
      }
  }
  return viol / (1.0 + T.max_abs());
}

CurvatureBundle curvature_bundle(const MetricField& field, const ChartPoint& p,
                                 const DiffConfig& cfg) {
  const int n = field.dim();
  MetricJets jets = jet2_at(field, p, cfg);

  CurvatureBundle b;
  b.point = p;
  b.g = jets.g;
  b.ginv = invert_metric(b.g);
  b.gamma = christoffel(jets);

  // dGamma[a][i](j,k) = d_a Gamma^i_jk, using d(g^{-1}) = -g^{-1} dg g^{-1}
  std::vector<std::vector<Eigen::MatrixXd>> dgamma(
      n, std::vector<Eigen::MatrixXd>(n, Eigen::MatrixXd::Zero(n, n)));
  std::vector<Eigen::MatrixXd> dginv(n);
  for (int a = 0; a < n; ++a) dginv[a] = -b.ginv * jets.dg[a] * b.ginv;
  for (int a = 0; a < n; ++a)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = j; k < n; ++k) {
          double s = 0.0;
          for (int l = 0; l < n; ++l) {
            s += dginv[a](i, l) * (jets.dg[j](l, k) + jets.dg[k](j, l) - jets.dg[l](j, k));
            s += b.ginv(i, l) * (jets.d2g[a][j](l, k) + jets.d2g[a][k](j, l) -
                                 jets.d2g[a][l](j, k));
          }
          dgamma[a][i](j, k) = 0.5 * s;
          dgamma[a][i](k, j) = dgamma[a][i](j, k);
        }

  b.r13 = Tensor4(n);
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < n; ++e)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = dgamma[a][d](e, c) - dgamma[e][d](a, c);
          for (int t = 0; t < n; ++t)
            s += b.gamma[t](e, c) * b.gamma[d](a, t) - b.gamma[t](a, c) * b.gamma[d](e, t);
          b.r13(a, e, c, d) = s;
        }

  b.r04 = lower_last_slot(b.r13, b.g);
  fill_algebraic_parts(b);
  return b;
}

CurvatureBundle bundle_from_r04(const Eigen::MatrixXd& g, const Tensor4& r04) {
  CurvatureBundle b;
  b.point = ChartPoint::Zero(g.rows());
  b.g = g;
  b.ginv = invert_metric(g);
  b.r04 = r04;
  b.r13 = raise_last_slot(r04, b.ginv);
  fill_algebraic_parts(b);
  return b;
}

}  // namespace curvsym
