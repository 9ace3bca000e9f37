#pragma once

// Truncated polynomial scalars ("jets") used to evaluate metric component
// expressions together with their exact first and second coordinate
// derivatives.  Jet1 carries (value, gradient), Jet2 additionally carries the
// symmetric Hessian.  Arithmetic follows the chain rule, so evaluating an
// expression over jets seeded with coordinate variables yields machine-exact
// derivatives of the expression.

#include <Eigen/Dense>

#include <cmath>
#include <stdexcept>
#include <string>

namespace curvsym {

// Domain failures during numeric evaluation (log of non-positive value,
// division by zero, ...).
class EvalError : public std::runtime_error {
public:
  explicit EvalError(const std::string& msg) : std::runtime_error(msg) {}
};

struct Jet1 {
  double v = 0.0;
  Eigen::VectorXd d;

  Jet1() = default;
  Jet1(double value, int n) : v(value), d(Eigen::VectorXd::Zero(n)) {}

  static Jet1 variable(double value, int n, int index) {
    Jet1 j(value, n);
    j.d[index] = 1.0;
    return j;
  }
};

struct Jet2 {
  double v = 0.0;
  Eigen::VectorXd d;
  Eigen::MatrixXd h;

  Jet2() = default;
  Jet2(double value, int n)
      : v(value), d(Eigen::VectorXd::Zero(n)), h(Eigen::MatrixXd::Zero(n, n)) {}

  static Jet2 variable(double value, int n, int index) {
    Jet2 j(value, n);
    j.d[index] = 1.0;
    return j;
  }
};

// ---- Jet1 arithmetic --------------------------------------------------------

inline Jet1 operator+(const Jet1& a, const Jet1& b) {
  Jet1 r = a;
  r.v += b.v;
  r.d += b.d;
  return r;
}

inline Jet1 operator-(const Jet1& a, const Jet1& b) {
  Jet1 r = a;
  r.v -= b.v;
  r.d -= b.d;
  return r;
}

inline Jet1 operator-(const Jet1& a) {
  Jet1 r = a;
  r.v = -r.v;
  r.d = -r.d;
  return r;
}

inline Jet1 operator*(const Jet1& a, const Jet1& b) {
  Jet1 r;
  r.v = a.v * b.v;
  r.d = a.d * b.v + b.d * a.v;
  return r;
}

inline Jet1 operator/(const Jet1& a, const Jet1& b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  Jet1 r;
  r.v = a.v / b.v;
  r.d = (a.d - r.v * b.d) / b.v;
  return r;
}

// ---- Jet2 arithmetic --------------------------------------------------------

inline Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v += b.v;
  r.d += b.d;
  r.h += b.h;
  return r;
}

inline Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r = a;
  r.v -= b.v;
  r.d -= b.d;
  r.h -= b.h;
  return r;
}

inline Jet2 operator-(const Jet2& a) {
  Jet2 r = a;
  r.v = -r.v;
  r.d = -r.d;
  r.h = -r.h;
  return r;
}

inline Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r;
  r.v = a.v * b.v;
  r.d = a.d * b.v + b.d * a.v;
  r.h = a.h * b.v + b.h * a.v + a.d * b.d.transpose() + b.d * a.d.transpose();
  return r;
}

inline Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.v == 0.0) throw EvalError("division by zero");
  // q = a/b  =>  a = q*b; solve for q's derivatives.
  Jet2 q;
  q.v = a.v / b.v;
  q.d = (a.d - q.v * b.d) / b.v;
  q.h = (a.h - q.v * b.h - q.d * b.d.transpose() - b.d * q.d.transpose()) / b.v;
  return q;
}

// ---- unary functions (chain rule: f(u) -> f'(u) u' ; f''(u) u'u'^T + f'(u) u'') ----

namespace detail {

inline Jet1 chain(const Jet1& u, double f, double f1) {
  Jet1 r;
  r.v = f;
  r.d = f1 * u.d;
  return r;
}

inline Jet2 chain(const Jet2& u, double f, double f1, double f2) {
  Jet2 r;
  r.v = f;
  r.d = f1 * u.d;
  r.h = f1 * u.h + f2 * (u.d * u.d.transpose());
  return r;
}

}  // namespace detail

inline double pow_int(double x, int k) {
  if (x == 0.0 && k < 0) throw EvalError("zero raised to a negative power");
  return std::pow(x, k);
}

inline Jet1 pow_int(const Jet1& u, int k) {
  if (u.v == 0.0 && k - 1 < 0) throw EvalError("zero raised to a negative power");
  double f = std::pow(u.v, k);
  double f1 = (k == 0) ? 0.0 : k * std::pow(u.v, k - 1);
  return detail::chain(u, f, f1);
}

inline Jet2 pow_int(const Jet2& u, int k) {
  if (u.v == 0.0 && k - 2 < 0 && k != 0 && k != 1)
    throw EvalError("zero raised to a negative power");
  if (u.v == 0.0 && k < 0) throw EvalError("zero raised to a negative power");
  double f = std::pow(u.v, k);
  double f1 = (k == 0) ? 0.0 : k * std::pow(u.v, k - 1);
  double f2 = (k == 0 || k == 1) ? 0.0 : double(k) * (k - 1) * std::pow(u.v, k - 2);
  return detail::chain(u, f, f1, f2);
}

inline Jet1 exp(const Jet1& u) {
  double e = std::exp(u.v);
  return detail::chain(u, e, e);
}
inline Jet2 exp(const Jet2& u) {
  double e = std::exp(u.v);
  return detail::chain(u, e, e, e);
}

inline Jet1 log(const Jet1& u) {
  if (u.v <= 0.0) throw EvalError("log of non-positive value");
  return detail::chain(u, std::log(u.v), 1.0 / u.v);
}
inline Jet2 log(const Jet2& u) {
  if (u.v <= 0.0) throw EvalError("log of non-positive value");
  return detail::chain(u, std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v));
}

inline Jet1 sin(const Jet1& u) { return detail::chain(u, std::sin(u.v), std::cos(u.v)); }
inline Jet2 sin(const Jet2& u) {
  return detail::chain(u, std::sin(u.v), std::cos(u.v), -std::sin(u.v));
}

inline Jet1 cos(const Jet1& u) { return detail::chain(u, std::cos(u.v), -std::sin(u.v)); }
inline Jet2 cos(const Jet2& u) {
  return detail::chain(u, std::cos(u.v), -std::sin(u.v), -std::cos(u.v));
}

inline Jet1 sinh(const Jet1& u) { return detail::chain(u, std::sinh(u.v), std::cosh(u.v)); }
inline Jet2 sinh(const Jet2& u) {
  return detail::chain(u, std::sinh(u.v), std::cosh(u.v), std::sinh(u.v));
}

inline Jet1 cosh(const Jet1& u) { return detail::chain(u, std::cosh(u.v), std::sinh(u.v)); }
inline Jet2 cosh(const Jet2& u) {
  return detail::chain(u, std::cosh(u.v), std::sinh(u.v), std::cosh(u.v));
}

inline Jet1 sqrt(const Jet1& u) {
  if (u.v <= 0.0) throw EvalError("sqrt of non-positive value in derivative context");
  double s = std::sqrt(u.v);
  return detail::chain(u, s, 0.5 / s);
}
inline Jet2 sqrt(const Jet2& u) {
  if (u.v <= 0.0) throw EvalError("sqrt of non-positive value in derivative context");
  double s = std::sqrt(u.v);
  return detail::chain(u, s, 0.5 / s, -0.25 / (s * u.v));
}

}  // namespace curvsym
