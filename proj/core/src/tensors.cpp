#include "curvsym/tensors.hpp"

#include <cmath>
#include <stdexcept>

namespace curvsym {

double Tensor4::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Tensor4& Tensor4::operator+=(const Tensor4& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}
Tensor4& Tensor4::operator-=(const Tensor4& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}
Tensor4& Tensor4::operator*=(double s) {
  for (double& v : c_) v *= s;
  return *this;
}

Tensor4 operator+(Tensor4 a, const Tensor4& b) { return a += b; }
Tensor4 operator-(Tensor4 a, const Tensor4& b) { return a -= b; }
Tensor4 operator*(double s, Tensor4 a) { return a *= s; }

double Tensor6::max_abs() const {
  double m = 0.0;
  for (double v : c_) m = std::max(m, std::abs(v));
  return m;
}

Tensor6& Tensor6::operator-=(const Tensor6& o) {
  for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

double plane_gram_det(const Eigen::MatrixXd& g, const Plane& pi) {
  double gvv = pi.v.dot(g * pi.v);
  double gww = pi.w.dot(g * pi.w);
  double gvw = pi.v.dot(g * pi.w);
  return gvv * gww - gvw * gvw;
}

Plane orthonormalize_plane(const Eigen::MatrixXd& g, const Plane& pi) {
  double gvv = pi.v.dot(g * pi.v);
  if (gvv <= 0.0) throw std::invalid_argument("degenerate plane: first vector has no length");
  Plane out;
  out.v = pi.v / std::sqrt(gvv);
  Eigen::VectorXd w = pi.w - out.v.dot(g * pi.w) * out.v;
  double gww = w.dot(g * w);
  if (gww <= 0.0) throw std::invalid_argument("degenerate plane: vectors are parallel");
  out.w = w / std::sqrt(gww);
  return out;
}

Endomorphism metric_endomorphism(const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y) {
  if (x.size() != y.size() || g.rows() != x.size())
    throw std::invalid_argument("metric_endomorphism: dimension mismatch");
  Eigen::VectorXd gx = g * x;
  Eigen::VectorXd gy = g * y;
  // (E z)^d = g(y,z) x^d - g(x,z) y^d  =>  E(d,c) = gy_c x_d - gx_c y_d
  return x * gy.transpose() - y * gx.transpose();
}

Tensor4 kulkarni_nomizu(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int n = int(A.rows());
  if (B.rows() != n || A.cols() != n || B.cols() != n)
    throw std::invalid_argument("kulkarni_nomizu: dimension mismatch");
  Tensor4 T(n);
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          T(h, i, j, k) =
              A(h, k) * B(i, j) + A(i, j) * B(h, k) - A(h, j) * B(i, k) - A(i, k) * B(h, j);
  return T;
}

Tensor4 act_on_04(const Endomorphism& E, const Tensor4& T) {
  const int n = T.dim();
  if (E.rows() != n || E.cols() != n) throw std::invalid_argument("act_on_04: dimension mismatch");
  Tensor4 out(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d) {
          double s = 0.0;
          for (int t = 0; t < n; ++t) {
            s -= E(t, a) * T(t, b, c, d);
            s -= E(t, b) * T(a, t, c, d);
            s -= E(t, c) * T(a, b, t, d);
            s -= E(t, d) * T(a, b, c, t);
          }
          out(a, b, c, d) = s;
        }
  return out;
}

Eigen::MatrixXd act_on_02(const Endomorphism& E, const Eigen::MatrixXd& S) {
  if (E.rows() != S.rows() || E.cols() != S.cols())
    throw std::invalid_argument("act_on_02: dimension mismatch");
  // (E.S)(X1,X2) = -S(EX1,X2) - S(X1,EX2)
  return -(E.transpose() * S) - (S * E);
}

Tensor6 tensor06_from_operator(const std::function<Endomorphism(int, int)>& op,
                               const Tensor4& T) {
  const int n = T.dim();
  Tensor6 out(n);
  for (int e = 0; e < n; ++e)
    for (int f = 0; f < n; ++f) {
      Tensor4 blk = act_on_04(op(e, f), T);
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          for (int c = 0; c < n; ++c)
            for (int d = 0; d < n; ++d) out(a, b, c, d, e, f) = blk(a, b, c, d);
    }
  return out;
}

double frobenius_inner(const Tensor6& a, const Tensor6& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("frobenius_inner: shape mismatch");
  double s = 0.0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double frobenius_inner(const Tensor4& a, const Tensor4& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("frobenius_inner: shape mismatch");
  double s = 0.0;
  const auto& x = a.data();
  const auto& y = b.data();
  for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
  return s;
}

double contract(const Tensor4& T, const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                const Eigen::VectorXd& v3, const Eigen::VectorXd& v4) {
  const int n = T.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    if (v1[a] == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      if (v2[b] == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        if (v3[c] == 0.0) continue;
        double partial = 0.0;
        for (int d = 0; d < n; ++d) partial += T(a, b, c, d) * v4[d];
        s += v1[a] * v2[b] * v3[c] * partial;
      }
    }
  }
  return s;
}

double contract(const Tensor6& T, const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                const Eigen::VectorXd& v3, const Eigen::VectorXd& v4,
                const Eigen::VectorXd& x, const Eigen::VectorXd& y) {
  const int n = T.dim();
  double s = 0.0;
  for (int a = 0; a < n; ++a) {
    if (v1[a] == 0.0) continue;
    for (int b = 0; b < n; ++b) {
      if (v2[b] == 0.0) continue;
      for (int c = 0; c < n; ++c) {
        if (v3[c] == 0.0) continue;
        for (int d = 0; d < n; ++d) {
          if (v4[d] == 0.0) continue;
          double partial = 0.0;
          for (int e = 0; e < n; ++e) {
            if (x[e] == 0.0) continue;
            for (int f = 0; f < n; ++f) partial += T(a, b, c, d, e, f) * x[e] * y[f];
          }
          s += v1[a] * v2[b] * v3[c] * v4[d] * partial;
        }
      }
    }
  }
  return s;
}

// ---------------------------------------------------------------------------

double antisym12_residual(const Tensor4& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          viol = std::max(viol, std::abs(T(a, b, c, d) + T(b, a, c, d)));
  return viol / (1.0 + T.max_abs());
}

double antisym34_residual(const Tensor4& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          viol = std::max(viol, std::abs(T(a, b, c, d) + T(a, b, d, c)));
  return viol / (1.0 + T.max_abs());
}

double pair_symmetry_residual(const Tensor4& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          viol = std::max(viol, std::abs(T(a, b, c, d) - T(c, d, a, b)));
  return viol / (1.0 + T.max_abs());
}

double bianchi1_residual(const Tensor4& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          viol = std::max(viol,
                          std::abs(T(a, b, c, d) + T(b, c, a, d) + T(c, a, b, d)));
  return viol / (1.0 + T.max_abs());
}

double prop_a_residual(const Tensor6& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f) {
              double t = T(a, b, c, d, e, f);
              viol = std::max(viol, std::abs(t + T(b, a, c, d, e, f)));
              viol = std::max(viol, std::abs(t - T(c, d, a, b, e, f)));
            }
  return viol / (1.0 + T.max_abs());
}

double prop_b_residual(const Tensor6& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
              viol = std::max(viol, std::abs(T(a, b, c, d, e, f) + T(a, c, d, b, e, f) +
                                             T(a, d, b, c, e, f)));
  return viol / (1.0 + T.max_abs());
}

double prop_c_residual(const Tensor6& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
              viol = std::max(viol,
                              std::abs(T(a, b, c, d, e, f) + T(a, b, c, d, f, e)));
  return viol / (1.0 + T.max_abs());
}

double prop_d_residual(const Tensor6& T) {
  const int n = T.dim();
  double viol = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int c = 0; c < n; ++c)
        for (int d = 0; d < n; ++d)
          for (int e = 0; e < n; ++e)
            for (int f = 0; f < n; ++f)
              viol = std::max(viol, std::abs(T(a, b, c, d, e, f) + T(c, d, e, f, a, b) +
                                             T(e, f, a, b, c, d)));
  return viol / (1.0 + T.max_abs());
}

}  // namespace curvsym
