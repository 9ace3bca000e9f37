#pragma once

// Geodesic and parallel-transport integration, holonomy around infinitesimal
// coordinate parallelograms, Levi-Civita squaroids for K, and the Deszcz
// squaroid ratio for L.  Classical fixed-step RK4 throughout; geodesic
// distances between nearby points via Newton shooting on the endpoint miss.

#include <Eigen/Dense>

#include <stdexcept>
#include <vector>

#include "curvsym/metric.hpp"

namespace curvsym {

class DomainExitError : public std::runtime_error {
public:
  explicit DomainExitError(const std::string& msg) : std::runtime_error(msg) {}
};

class ShootingError : public std::runtime_error {
public:
  explicit ShootingError(const std::string& msg) : std::runtime_error(msg) {}
};

class CurvatureIndependentError : public std::runtime_error {
public:
  explicit CurvatureIndependentError(const std::string& msg) : std::runtime_error(msg) {}
};

struct CurveState {
  ChartPoint point;
  Eigen::VectorXd velocity;
  std::vector<Eigen::VectorXd> carried;  // parallel-transported vectors
};

/// One RK4 step of size h of the coupled geodesic + parallel transport system
///   xdot = v,   vdot^i = -Gam^i_jk v^j v^k,   zdot^i = -Gam^i_jk v^j z^k.
CurveState geodesic_step(const MetricField& field, const CurveState& state, double h);

/// Integrates total parameter length s with fixed step h (the step is shrunk
/// uniformly so an integer number of steps covers s exactly).  Throws
/// DomainExitError if the trajectory leaves the domain box.
CurveState integrate_geodesic(const MetricField& field, CurveState state, double s, double h);

/// Parallel transport of the carried vectors along the coordinate line
/// segment p -> p + delta * e_axis (the point moves on the straight
/// coordinate line, not a geodesic).
std::vector<Eigen::VectorXd> transport_coordinate_leg(const MetricField& field,
                                                      const ChartPoint& p, int axis,
                                                      double delta,
                                                      std::vector<Eigen::VectorXd> carried);

/// Transports z around the infinitesimal coordinate parallelogram cornered at
/// p and tangent to e_h ^ e_k, with increments dx, dy.  The traversal
/// orientation realizes the first-order expansion
///   z* = z + [R(e_h, e_k) z] dx dy + higher order.
Eigen::VectorXd holonomy_parallelogram(const MetricField& field, const ChartPoint& p,
                                       int h_axis, int k_axis, double dx, double dy,
                                       const Eigen::VectorXd& z);

/// All carried vectors around the same loop in one pass.
std::vector<Eigen::VectorXd> holonomy_parallelogram_multi(
    const MetricField& field, const ChartPoint& p, int h_axis, int k_axis, double dx,
    double dy, std::vector<Eigen::VectorXd> carried);

/// Geodesic distance between nearby points by shooting: solves exp_a(u) = b
/// for the initial velocity u (Newton on the endpoint miss, initialized with
/// the coordinate difference) and returns ||u||_g.
double geodesic_distance(const MetricField& field, const ChartPoint& a, const ChartPoint& b);

struct SquaroidResult {
  double epsilon = 0.0;
  double eps_prime = 0.0;
  double eps_star_prime = 0.0;   // transported squaroid (Deszcz only)
  double eps_wedge_prime = 0.0;  // rotated squaroid (Deszcz only)
  double K_estimate = 0.0;
  double L_estimate = 0.0;  // NaN unless produced by squaroid_deszcz
};

/// Levi-Civita squaroid on the g-orthonormal pair (v, w) at p with side eps:
/// geodesic from p along w to q, transport v to v*, geodesics of length eps
/// from p along v and from q along v*, then K = (eps^2 - eps'^2)/eps^4 from
/// the geodesic distance eps' between the endpoints.
SquaroidResult squaroid_riemann(const MetricField& field, const ChartPoint& p,
                                const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                                double eps);

/// Deszcz squaroid ratio: eps' from the base squaroid, eps*' from the squaroid
/// built on the pair transported around the (x_axis, y_axis) coordinate
/// parallelogram with dx = dy = delta, and eps^' from the squaroid built on
/// the pair rotated in the coordinate plane by dphi = delta^2 * area.
///   L = [(eps*')^2 - (eps')^2] / [(eps^')^2 - (eps')^2]
/// Throws CurvatureIndependentError when the denominator falls under the
/// guard (the plane pair is curvature independent at this resolution).
SquaroidResult squaroid_deszcz(const MetricField& field, const ChartPoint& p,
                               const Eigen::VectorXd& v, const Eigen::VectorXd& w,
                               int x_axis, int y_axis, double eps, double delta);

/// Exact finite rotation of z with respect to the g-orthonormal plane (x, y):
/// the in-plane component turns by dphi, the orthogonal component is kept.
/// First order in dphi this is z + [(x ^_g y) z] dphi.
Eigen::VectorXd rotate_in_plane(const Eigen::MatrixXd& g, const Eigen::VectorXd& z,
                                const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                                double dphi);

/// Two-point Richardson extrapolation assuming error ~ h^order:
/// (2^order f(h/2) - f(h)) / (2^order - 1).
double richardson(double f_h, double f_h2, int order = 1);

}  // namespace curvsym
