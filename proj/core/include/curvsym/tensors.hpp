#pragma once

// Pointwise multilinear algebra on a tangent space: dense (0,4) and (0,6)
// tensors, endomorphisms, the Kulkarni-Nomizu product, metric endomorphisms,
// and derivation actions of endomorphism-valued operators.
//
// Index contracts:
//   Tensor4  T(a,b,c,d)       = T(X_a, X_b, X_c, X_d)
//   Tensor6  T(a,b,c,d,e,f)   = (op(X_e, X_f) . T)(X_a, X_b, X_c, X_d)
//   Endomorphism E            : (E z)^d = E(d, c) z^c
// Kulkarni-Nomizu sign convention:
//   (A ^ B)_hijk = A_hk B_ij + A_ij B_hk - A_hj B_ik - A_ik B_hj
// so that G = (1/2) g^g satisfies G(v,w,w,v) = |v|^2 |w|^2 - g(v,w)^2 and
// G(X,Y,Z,W) = g((X ^_g Y) Z, W).

#include <Eigen/Dense>

#include <functional>
#include <vector>

namespace curvsym {

using Endomorphism = Eigen::MatrixXd;

class Tensor4 {
public:
  Tensor4() = default;
  explicit Tensor4(int n) : n_(n), c_(size_t(n) * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int a, int b, int c, int d) {
    return c_[((size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }
  double operator()(int a, int b, int c, int d) const {
    return c_[((size_t(a) * n_ + b) * n_ + c) * n_ + d];
  }

  const std::vector<double>& data() const { return c_; }
  std::vector<double>& data() { return c_; }

  double max_abs() const;

  Tensor4& operator+=(const Tensor4& o);
  Tensor4& operator-=(const Tensor4& o);
  Tensor4& operator*=(double s);

private:
  int n_ = 0;
  std::vector<double> c_;
};

Tensor4 operator+(Tensor4 a, const Tensor4& b);
Tensor4 operator-(Tensor4 a, const Tensor4& b);
Tensor4 operator*(double s, Tensor4 a);

class Tensor6 {
public:
  Tensor6() = default;
  explicit Tensor6(int n) : n_(n), c_(size_t(n) * n * n * n * n * n, 0.0) {}

  int dim() const { return n_; }

  double& operator()(int a, int b, int c, int d, int e, int f) {
    return c_[((((size_t(a) * n_ + b) * n_ + c) * n_ + d) * n_ + e) * n_ + f];
  }
  double operator()(int a, int b, int c, int d, int e, int f) const {
    return c_[((((size_t(a) * n_ + b) * n_ + c) * n_ + d) * n_ + e) * n_ + f];
  }

  const std::vector<double>& data() const { return c_; }
  std::vector<double>& data() { return c_; }

  double max_abs() const;

  Tensor6& operator-=(const Tensor6& o);

private:
  int n_ = 0;
  std::vector<double> c_;
};

/// An ordered pair of tangent vectors spanning a 2-plane.
struct Plane {
  Eigen::VectorXd v, w;
};

/// g-Gram determinant of the pair: positive iff the plane is non-degenerate.
double plane_gram_det(const Eigen::MatrixXd& g, const Plane& pi);

/// g-orthonormal basis of the plane via Gram-Schmidt (keeps orientation).
Plane orthonormalize_plane(const Eigen::MatrixXd& g, const Plane& pi);

/// The metric endomorphism (x ^_g y): z -> g(y,z) x - g(x,z) y.
Endomorphism metric_endomorphism(const Eigen::MatrixXd& g, const Eigen::VectorXd& x,
                                 const Eigen::VectorXd& y);

/// Kulkarni-Nomizu product of two symmetric (0,2) tensors.
Tensor4 kulkarni_nomizu(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B);

/// Derivation action on a (0,4) tensor:
/// (E.T)(X1,..,X4) = -T(EX1,..) - T(..,EX2,..) - T(..,EX3,..) - T(..,EX4).
Tensor4 act_on_04(const Endomorphism& E, const Tensor4& T);

/// Two-slot derivation action on a (0,2) tensor.
Eigen::MatrixXd act_on_02(const Endomorphism& E, const Eigen::MatrixXd& S);

/// Assembles the (0,6) tensor with last-pair operator op(e,f).
Tensor6 tensor06_from_operator(const std::function<Endomorphism(int, int)>& op,
                               const Tensor4& T);

double frobenius_inner(const Tensor6& a, const Tensor6& b);
double frobenius_inner(const Tensor4& a, const Tensor4& b);

double contract(const Tensor4& T, const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                const Eigen::VectorXd& v3, const Eigen::VectorXd& v4);

double contract(const Tensor6& T, const Eigen::VectorXd& v1, const Eigen::VectorXd& v2,
                const Eigen::VectorXd& v3, const Eigen::VectorXd& v4,
                const Eigen::VectorXd& x, const Eigen::VectorXd& y);

// ---- residuals of the structural identities (relative: ||viol||/(1+||T||)) --

double antisym12_residual(const Tensor4& T);
double antisym34_residual(const Tensor4& T);
double pair_symmetry_residual(const Tensor4& T);
double bianchi1_residual(const Tensor4& T);

/// Properties a)-d) of curvature-derivative (0,6) tensors:
/// a) antisymmetry in (1,2) and symmetry under (12)<->(34) block swap,
/// b) cyclic sum over slots (2,3,4),
/// c) antisymmetry in the operator pair,
/// d) cyclic sum over the three index pairs.
double prop_a_residual(const Tensor6& T);
double prop_b_residual(const Tensor6& T);
double prop_c_residual(const Tensor6& T);
double prop_d_residual(const Tensor6& T);

}  // namespace curvsym
