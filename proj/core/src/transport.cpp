#include "curvsym/transport.hpp"

#include <cmath>

#include "curvsym/curvature.hpp"
#include "curvsym/tensors.hpp"

namespace curvsym {

namespace {

struct Derivs {
  Eigen::VectorXd dx, dv;
  std::vector<Eigen::VectorXd> dz;
};

Derivs rhs(const MetricField& field, const ChartPoint& x, const Eigen::VectorXd& v,
           const std::vector<Eigen::VectorXd>& carried) {
  const int n = field.dim();
  Eigen::MatrixXd g;
  std::vector<Eigen::MatrixXd> dg;
  field.value_and_grad(x, g, dg);
  std::vector<Eigen::MatrixXd> gamma = christoffel(g, dg);

  Derivs d;
  d.dx = v;
  d.dv = Eigen::VectorXd::Zero(n);
  for (int i = 0; i < n; ++i) d.dv[i] = -v.dot(gamma[i] * v);
  d.dz.reserve(carried.size());
  for (const auto& z : carried) {
    Eigen::VectorXd dz(n);
    for (int i = 0; i < n; ++i) dz[i] = -v.dot(gamma[i] * z);
    d.dz.push_back(std::move(dz));
  }
  return d;
}

CurveState advance(const CurveState& s, const Derivs& d, double h) {
  CurveState out;
  out.point = s.point + h * d.dx;
  out.velocity = s.velocity + h * d.dv;
  out.carried.reserve(s.carried.size());
  for (size_t i = 0; i < s.carried.size(); ++i)
    out.carried.push_back(s.carried[i] + h * d.dz[i]);
  return out;
}

void accumulate(CurveState& acc, const Derivs& d, double w) {
  acc.point += w * d.dx;
  acc.velocity += w * d.dv;
  for (size_t i = 0; i < acc.carried.size(); ++i) acc.carried[i] += w * d.dz[i];
}

}  // namespace

CurveState geodesic_step(const MetricField& field, const CurveState& state, double h) {
  Derivs k1 = rhs(field, state.point, state.velocity, state.carried);
  CurveState s2 = advance(state, k1, h / 2.0);
  Derivs k2 = rhs(field, s2.point, s2.velocity, s2.carried);
  CurveState s3 = advance(state, k2, h / 2.0);
  Derivs k3 = rhs(field, s3.point, s3.velocity, s3.carried);
  CurveState s4 = advance(state, k3, h);
  Derivs k4 = rhs(field, s4.point, s4.velocity, s4.carried);

  CurveState out = state;
  accumulate(out, k1, h / 6.0);
  accumulate(out, k2, h / 3.0);
  accumulate(out, k3, h / 3.0);
  accumulate(out, k4, h / 6.0);
  return out;
}

CurveState integrate_geodesic(const MetricField& field, CurveState state, double s, double h) {
  if (h <= 0.0) throw std::invalid_argument("step must be positive");
  if (s == 0.0) return state;
  if (s < 0.0) {
    s = -s;
    state.velocity = -state.velocity;
  }
  long steps = std::max(1L, long(std::ceil(s / h)));
  double hh = s / double(steps);
  for (long i = 0; i < steps; ++i) {
    state = geodesic_step(field, state, hh);
    if (!field.domain().contains(state.point))
      throw DomainExitError("geodesic left the domain box of metric '" + field.name() + "'");
  }
  return state;
}

std::vector<Eigen::VectorXd> transport_coordinate_leg(const MetricField& field,
                                                      const ChartPoint& p, int axis,
                                                      double delta,
                                                      std::vector<Eigen::VectorXd> carried) {
  if (axis < 0 || axis >= field.dim()) throw std::invalid_argument("bad axis");
  const int n = field.dim();
  Eigen::VectorXd dir = Eigen::VectorXd::Zero(n);
  dir[axis] = delta;

  // dz/dt = -Gamma(p + t dir)(dir, z), t in [0, 1]
  auto leg_rhs = [&](double t, const std::vector<Eigen::VectorXd>& zs) {
    Eigen::MatrixXd g;
    std::vector<Eigen::MatrixXd> dg;
    field.value_and_grad(p + t * dir, g, dg);
    std::vector<Eigen::MatrixXd> gamma = christoffel(g, dg);
    std::vector<Eigen::VectorXd> out;
    out.reserve(zs.size());
    for (const auto& z : zs) {
      Eigen::VectorXd dz(n);
      for (int i = 0; i < n; ++i) dz[i] = -dir.dot(gamma[i] * z);
      out.push_back(std::move(dz));
    }
    return out;
  };

  long steps = std::max(8L, long(std::ceil(std::abs(delta) / 1e-3)));
  double h = 1.0 / double(steps);
  auto axpy = [](const std::vector<Eigen::VectorXd>& a, double w,
                 const std::vector<Eigen::VectorXd>& b) {
    std::vector<Eigen::VectorXd> out = a;
    for (size_t i = 0; i < out.size(); ++i) out[i] += w * b[i];
    return out;
  };
  double t = 0.0;
  for (long i = 0; i < steps; ++i) {
    auto k1 = leg_rhs(t, carried);
    auto k2 = leg_rhs(t + h / 2.0, axpy(carried, h / 2.0, k1));
    auto k3 = leg_rhs(t + h / 2.0, axpy(carried, h / 2.0, k2));
    auto k4 = leg_rhs(t + h, axpy(carried, h, k3));
    for (size_t j = 0; j < carried.size(); ++j)
      carried[j] += (h / 6.0) * (k1[j] + 2.0 * k2[j] + 2.0 * k3[j] + k4[j]);
    t += h;
  }
  return carried;
}

std::vector<Eigen::VectorXd> holonomy_parallelogram_multi(
    const MetricField& field, const ChartPoint& p, int h_axis, int k_axis, double dx,
    double dy, std::vector<Eigen::VectorXd> carried) {
  // Leg corners must stay inside the box.
  ChartPoint corner = p;
  auto check = [&](const ChartPoint& q) {
    if (!field.domain().contains(q))
      throw DomainExitError("holonomy parallelogram leaves the domain box");
  };
  check(p);
  // Traversal order (+k, +h, -k, -h): this orientation realizes
  // z* - z = +R(e_h, e_k) z dx dy for the operator convention of r13.
  carried = transport_coordinate_leg(field, corner, k_axis, dy, std::move(carried));
  corner[k_axis] += dy;
  check(corner);
  carried = transport_coordinate_leg(field, corner, h_axis, dx, std::move(carried));
  corner[h_axis] += dx;
  check(corner);
  carried = transport_coordinate_leg(field, corner, k_axis, -dy, std::move(carried));
  corner[k_axis] -= dy;
  check(corner);
  carried = transport_coordinate_leg(field, corner, h_axis, -dx, std::move(carried));
  return carried;
}

Eigen::VectorXd holonomy_parallelogram(const MetricField& field, const ChartPoint& p,
                                       int h_axis, int k_axis, double dx, double dy,
                                       const Eigen::VectorXd& z) {
  std::vector<Eigen::VectorXd> out =
      holonomy_parallelogram_multi(field, p, h_axis, k_axis, dx, dy, {z});
  return out[0];
}

namespace {

// exp_a(u): integrate the geodesic with initial velocity u over unit time.
ChartPoint exp_map(const MetricField& field, const ChartPoint& a, const Eigen::VectorXd& u,
                   int steps) {
  CurveState s{a, u, {}};
  double h = 1.0 / double(steps);
  for (int i = 0; i < steps; ++i) s = geodesic_step(field, s, h);
  return s.point;
}

}  // namespace

double geodesic_distance(const MetricField& field, const ChartPoint& a, const ChartPoint& b) {
  const int n = field.dim();
  const int steps = 96;
  Eigen::VectorXd u = b - a;
  const double atol = 1e-13 * (1.0 + a.cwiseAbs().maxCoeff() + b.cwiseAbs().maxCoeff());

  Eigen::VectorXd miss = exp_map(field, a, u, steps) - b;
  for (int iter = 0; iter < 30 && miss.cwiseAbs().maxCoeff() > atol; ++iter) {
    // finite-difference Jacobian of the endpoint with respect to u
    Eigen::MatrixXd J(n, n);
    double du = std::max(1e-9, 1e-7 * u.cwiseAbs().maxCoeff());
    for (int j = 0; j < n; ++j) {
      Eigen::VectorXd up = u, um = u;
      up[j] += du;
      um[j] -= du;
      J.col(j) = (exp_map(field, a, up, steps) - exp_map(field, a, um, steps)) / (2.0 * du);
    }
    u -= J.partialPivLu().solve(miss);
    miss = exp_map(field, a, u, steps) - b;
  }
  if (miss.cwiseAbs().maxCoeff() > atol)
    throw ShootingError("geodesic distance solver failed to converge");
  Eigen::MatrixXd g = field.value(a);
  return std::sqrt(u.dot(g * u));
}

namespace {

void require_orthonormal(const Eigen::MatrixXd& g, const Eigen::VectorXd& v,
                         const Eigen::VectorXd& w, const char* who) {
  double evv = std::abs(v.dot(g * v) - 1.0);
  double eww = std::abs(w.dot(g * w) - 1.0);
  double evw = std::abs(v.dot(g * w));
  if (evv > 1e-9 || eww > 1e-9 || evw > 1e-9)
    throw std::invalid_argument(std::string(who) + ": vectors are not g-orthonormal");
}

}  // namespace

SquaroidResult squaroid_riemann(const MetricField& field, const ChartPoint& p,
                                const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                double eps) {
  if (eps <= 0.0) throw std::invalid_argument("squaroid side must be positive");
  require_orthonormal(field.value(p), v, w, "squaroid_riemann");
  const double h = std::min(1e-3, eps / 100.0);

  // alpha: from p along w, carrying v
  CurveState alpha = integrate_geodesic(field, CurveState{p, w, {v}}, eps, h);
  const ChartPoint q = alpha.point;
  const Eigen::VectorXd v_star = alpha.carried[0];

  ChartPoint p_bar = integrate_geodesic(field, CurveState{p, v, {}}, eps, h).point;
  ChartPoint q_bar = integrate_geodesic(field, CurveState{q, v_star, {}}, eps, h).point;

  SquaroidResult r;
  r.epsilon = eps;
  r.eps_prime = geodesic_distance(field, p_bar, q_bar);
  r.K_estimate = (eps * eps - r.eps_prime * r.eps_prime) / (eps * eps * eps * eps);
  r.L_estimate = std::nan("");
  return r;
}

SquaroidResult squaroid_deszcz(const MetricField& field, const ChartPoint& p,
                               const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                               int x_axis, int y_axis, double eps, double delta) {
  const int n = field.dim();
  Eigen::MatrixXd g = field.value(p);
  require_orthonormal(g, v, w, "squaroid_deszcz");

  SquaroidResult base = squaroid_riemann(field, p, v, w, eps);

  // transported pair: around the coordinate parallelogram, dx = dy = delta
  std::vector<Eigen::VectorXd> star =
      holonomy_parallelogram_multi(field, p, x_axis, y_axis, delta, delta, {v, w});

  // rotated pair: in the plane of the coordinate axes, over dphi = delta^2
  // scaled by the g-area of (e_x, e_y) so both perturbations use the same
  // bivector normalization
  Plane axes{Eigen::VectorXd::Unit(n, x_axis), Eigen::VectorXd::Unit(n, y_axis)};
  double area = std::sqrt(plane_gram_det(g, axes));
  Plane onb = orthonormalize_plane(g, axes);
  double dphi = delta * delta * area;
  Eigen::VectorXd v_wedge = rotate_in_plane(g, v, onb.v, onb.w, dphi);
  Eigen::VectorXd w_wedge = rotate_in_plane(g, w, onb.v, onb.w, dphi);

  SquaroidResult r = base;
  r.eps_star_prime = squaroid_riemann(field, p, star[0], star[1], eps).eps_prime;
  r.eps_wedge_prime = squaroid_riemann(field, p, v_wedge, w_wedge, eps).eps_prime;

  double num = r.eps_star_prime * r.eps_star_prime - r.eps_prime * r.eps_prime;
  double den = r.eps_wedge_prime * r.eps_wedge_prime - r.eps_prime * r.eps_prime;
  double guard = 1e-11 * eps * eps;
  if (std::abs(den) <= guard)
    throw CurvatureIndependentError(
        "plane pair is curvature independent at this resolution");
  r.L_estimate = num / den;
  return r;
}

Eigen::VectorXd rotate_in_plane(const Eigen::MatrixXd& g, const Eigen::VectorXd& z,
                                const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                double dphi) {
  require_orthonormal(g, x, y, "rotate_in_plane");
  double a = x.dot(g * z);
  double b = y.dot(g * z);
  Eigen::VectorXd z_perp = z - a * x - b * y;
  // generator (x ^_g y): x -> -y, y -> x; so (a, b) evolves as
  // da/dphi = b, db/dphi = -a
  double c = std::cos(dphi), s = std::sin(dphi);
  double a2 = a * c + b * s;
  double b2 = b * c - a * s;
  return z_perp + a2 * x + b2 * y;
}

double richardson(double f_h, double f_h2, int order) {
  double w = std::pow(2.0, order);
  return (w * f_h2 - f_h) / (w - 1.0);
}

}  // namespace curvsym
