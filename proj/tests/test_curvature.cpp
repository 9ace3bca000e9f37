#include <doctest.h>

#include <cmath>

#include "curvsym/curvature.hpp"

using namespace curvsym;

namespace {

const DiffConfig kJet = DiffConfig::jet_mode();

double rel_diff4(const Tensor4& a, const Tensor4& b) {
  double viol = 0.0;
  for (size_t i = 0; i < a.data().size(); ++i)
    viol = std::max(viol, std::abs(a.data()[i] - b.data()[i]));
  return viol / (1.0 + a.max_abs());
}

}  // namespace

TEST_CASE("jet2_at: constant metric has vanishing derivatives") {
  MetricField f = catalog_metric("euclidean", {{"n", 3}});
  ChartPoint p(3);
  p << 0.2, 0.1, -0.5;
  MetricJets j = jet2_at(f, p, kJet);
  for (int a = 0; a < 3; ++a) {
    CHECK(j.dg[a].cwiseAbs().maxCoeff() == 0.0);
    for (int b = 0; b < 3; ++b) CHECK(j.d2g[a][b].cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("jet2_at: sol derivatives at the origin") {
  MetricField f = catalog_metric("sol");
  MetricJets j = jet2_at(f, ChartPoint::Zero(3), kJet);
  CHECK(j.dg[2](0, 0) == 2.0);        // d_z g_xx = 2 e^{2z}
  CHECK(j.d2g[2][2](0, 0) == 4.0);    // d_z d_z g_xx = 4 e^{2z}
  CHECK(j.dg[2](1, 1) == -2.0);
  CHECK(j.d2g[2][2](1, 1) == 4.0);
  CHECK(j.dg[0].cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jet2_at: jet mode against the finite-difference oracle") {
  MetricField f = catalog_metric("space_form", {{"n", 2}, {"c", 1.0}});
  ChartPoint p = ChartPoint::Zero(2);
  MetricJets je = jet2_at(f, p, kJet);
  MetricJets fd = jet2_at(f, p, DiffConfig::fd_mode());
  // even conformal factor: gradient vanishes at the origin
  for (int a = 0; a < 2; ++a) CHECK(je.dg[a].cwiseAbs().maxCoeff() == 0.0);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      CHECK((je.d2g[a][b] - fd.d2g[a][b]).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("jet2_at: fd preconditions") {
  MetricField f = catalog_metric("euclidean", {{"n", 2}});
  DiffConfig bad = DiffConfig::fd_mode(1.0);
  CHECK_THROWS_AS(jet2_at(f, ChartPoint::Zero(2), bad), std::invalid_argument);
  ChartPoint edge(2);
  edge << 1.0, 0.0;  // exactly on the boundary: no room for the stencil
  CHECK_THROWS_AS(jet2_at(f, edge, DiffConfig::fd_mode()), std::invalid_argument);
}

TEST_CASE("christoffel: euclidean is zero, sol matches hand computation") {
  MetricField e = catalog_metric("euclidean", {{"n", 3}});
  auto ge = christoffel(jet2_at(e, ChartPoint::Zero(3), kJet));
  for (const auto& m : ge) CHECK(m.cwiseAbs().maxCoeff() == 0.0);

  MetricField sol = catalog_metric("sol");
  auto gs = christoffel(jet2_at(sol, ChartPoint::Zero(3), kJet));
  CHECK(gs[0](0, 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(gs[1](1, 2) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(gs[2](0, 0) == doctest::Approx(-1.0).epsilon(1e-14));
  CHECK(gs[2](1, 1) == doctest::Approx(1.0).epsilon(1e-14));
  // everything else vanishes
  double other = 0.0;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) {
        bool named = (i == 0 && ((j == 0 && k == 2) || (j == 2 && k == 0))) ||
                     (i == 1 && ((j == 1 && k == 2) || (j == 2 && k == 1))) ||
                     (i == 2 && j == 0 && k == 0) || (i == 2 && j == 1 && k == 1);
        if (!named) other = std::max(other, std::abs(gs[i](j, k)));
      }
  CHECK(other <= 1e-14);
}

TEST_CASE("christoffel: nabla g = 0 on every catalog metric") {
  for (const char* name : {"sol", "product_s2xe1", "product_h2xe1"}) {
    MetricField f = catalog_metric(name);
    for (const ChartPoint& p : sample_points(f, 10, 2)) {
      MetricJets j = jet2_at(f, p, kJet);
      CHECK(metric_compat_residual(j, christoffel(j)) <= 1e-10);
    }
  }
  MetricField t = catalog_metric("thurston", {{"m", -0.25}, {"l", 1.0}});
  for (const ChartPoint& p : sample_points(t, 10, 2)) {
    MetricJets j = jet2_at(t, p, kJet);
    CHECK(metric_compat_residual(j, christoffel(j)) <= 1e-10);
  }
}

TEST_CASE("bundle: euclidean curvature vanishes") {
  MetricField f = catalog_metric("euclidean", {{"n", 3}});
  CurvatureBundle b = curvature_bundle(f, ChartPoint::Zero(3), kJet);
  CHECK(b.r04.max_abs() == 0.0);
  CHECK(b.rr.max_abs() == 0.0);
  CHECK(b.tach_r.max_abs() == 0.0);
  CHECK(b.scalar == 0.0);
}

TEST_CASE("bundle: space form satisfies R = c G at sampled points") {
  for (double c : {1.0, -1.0}) {
    MetricField f = catalog_metric("space_form", {{"n", 3}, {"c", c}});
    for (const ChartPoint& p : sample_points(f, 20, 13)) {
      CurvatureBundle b = curvature_bundle(f, p, kJet);
      Tensor4 cg = b.bigG;
      cg *= c;
      CHECK(rel_diff4(b.r04, cg) <= 1e-9);
    }
  }
}

TEST_CASE("bundle: space form Ricci convention S = (n-1) c g, tau = n(n-1) c") {
  MetricField f = catalog_metric("space_form", {{"n", 3}, {"c", 1.0}});
  CurvatureBundle b = curvature_bundle(f, ChartPoint::Zero(3), kJet);
  CHECK((b.ricci - 2.0 * b.g).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(b.scalar == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("bundle: sol scalar curvature is constant -2") {
  MetricField f = catalog_metric("sol");
  DiffConfig fd = DiffConfig::fd_mode();
  for (const ChartPoint& p : sample_points(f, 20, 17)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    CHECK(b.scalar == doctest::Approx(-2.0).epsilon(1e-11));
    CurvatureBundle bf = curvature_bundle(f, p, fd);
    CHECK(bf.scalar == doctest::Approx(-2.0).epsilon(1e-5));
  }
}

TEST_CASE("bundle: curvature symmetry residuals in jet mode") {
  for (const char* name : {"sol", "product_h2xe1"}) {
    MetricField f = catalog_metric(name);
    for (const ChartPoint& p : sample_points(f, 10, 29)) {
      CurvatureBundle b = curvature_bundle(f, p, kJet);
      CHECK(bianchi1_residual(b.r04) <= 1e-9);
      CHECK(antisym12_residual(b.r04) <= 1e-12);
      CHECK(antisym34_residual(b.r04) <= 1e-12);
      CHECK(pair_symmetry_residual(b.r04) <= 1e-12);
    }
  }
}

TEST_CASE("bundle: the a)-d) properties of R.R and ^g.R") {
  MetricField f = catalog_metric("thurston", {{"m", -0.25}, {"l", 1.0}});
  for (const ChartPoint& p : sample_points(f, 5, 31)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    for (const Tensor6* t : {&b.rr, &b.tach_r}) {
      CHECK(prop_a_residual(*t) <= 1e-8);
      CHECK(prop_b_residual(*t) <= 1e-8);
      CHECK(prop_c_residual(*t) <= 1e-8);
      CHECK(prop_d_residual(*t) <= 1e-8);
    }
  }
}

TEST_CASE("weyl: vanishes identically in dimension 3") {
  for (const char* name : {"sol", "product_s2xe1"}) {
    MetricField f = catalog_metric(name);
    for (const ChartPoint& p : sample_points(f, 10, 37)) {
      CurvatureBundle b = curvature_bundle(f, p, kJet);
      CHECK(b.weyl.max_abs() <= 1e-10 * (1.0 + b.r04.max_abs()));
    }
  }
}

TEST_CASE("weyl: vanishes for 4D space forms and is trace free") {
  MetricField f = catalog_metric("space_form", {{"n", 4}, {"c", 0.7}});
  for (const ChartPoint& p : sample_points(f, 5, 41)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    CHECK(b.weyl.max_abs() <= 1e-10 * (1.0 + b.r04.max_abs()));
    CHECK(tracefree_residual(b.weyl, b.ginv) <= 1e-9);
  }
}

TEST_CASE("weyl: trace free on a generic 4D metric") {
  const std::string text =
      "dim 4\n"
      "coords x y z w\n"
      "g 0 0 = 1 + 0.2*sin(y) + 0.1*z^2\n"
      "g 1 1 = 1 + 0.15*cos(x + w)\n"
      "g 2 2 = 1 + 0.1*exp(0.3*x)\n"
      "g 3 3 = 1 + 0.2*cos(z)\n"
      "g 0 1 = 0.05*sin(z + w)\n"
      "g 2 3 = 0.04*x*y\n";
  MetricField f = parse_metric_spec(text, "generic4");
  for (const ChartPoint& p : sample_points(f, 5, 43)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    CHECK(tracefree_residual(b.weyl, b.ginv) <= 1e-9);
    CHECK(b.weyl.max_abs() > 1e-6);  // and it is genuinely nonzero here
  }
}

TEST_CASE("weyl: conformal invariance of the (1,3) tensor in 4D") {
  const std::string base =
      "dim 4\n"
      "coords x y z w\n"
      "g 0 0 = 1 + 0.2*sin(y)\n"
      "g 1 1 = 1 + 0.1*cos(x)\n"
      "g 2 2 = 1 + 0.1*sin(w)\n"
      "g 3 3 = 1 + 0.2*cos(z)\n"
      "g 0 2 = 0.05*sin(z)\n";
  MetricField f = parse_metric_spec(base, "generic4");

  // e^{2u} g with u = 0.15 sin(x + 0.5 z) - 0.1 w: wrap every printed entry
  std::string scaled = "dim 4\ncoords x y z w\n";
  const std::string conf = "exp(2*(0.15*sin(x + 0.5*z) - 0.1*w))";
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      const ExprPtr& e = f.entry(i, j);
      if (!e) continue;
      scaled += "g " + std::to_string(i) + " " + std::to_string(j) + " = " + conf + "*(" +
                expr_to_text(*e, f.coord_names(), f.param_names()) + ")\n";
    }
  MetricField fc = parse_metric_spec(scaled, "generic4_conformal");

  for (const ChartPoint& p : sample_points(f, 4, 47)) {
    CurvatureBundle a = curvature_bundle(f, p, kJet);
    CurvatureBundle c = curvature_bundle(fc, p, kJet);
    // raise the last slot of C with the respective inverse metrics
    auto c13 = [](const CurvatureBundle& b) {
      const int n = b.dim();
      Tensor4 out(n);
      for (int h = 0; h < n; ++h)
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
              double s = 0.0;
              for (int e = 0; e < n; ++e) s += b.weyl(h, i, j, e) * b.ginv(e, k);
              out(h, i, j, k) = s;
            }
      return out;
    };
    Tensor4 ca = c13(a), cc = c13(c);
    double viol = 0.0;
    for (size_t i = 0; i < ca.data().size(); ++i)
      viol = std::max(viol, std::abs(ca.data()[i] - cc.data()[i]));
    CHECK(viol / (1.0 + ca.max_abs()) <= 1e-6);
  }
}

TEST_CASE("scaling law: g -> k g leaves r13, scales r04, rr, tach_r") {
  MetricField f = catalog_metric("sol");
  const double k = 3.0;
  MetricField fk = f.scaled(k, "sol_k");
  for (const ChartPoint& p : sample_points(f, 5, 53)) {
    CurvatureBundle a = curvature_bundle(f, p, kJet);
    CurvatureBundle b = curvature_bundle(fk, p, kJet);
    CHECK(rel_diff4(a.r13, b.r13) <= 1e-9);

    Tensor4 kr = a.r04;
    kr *= k;
    CHECK(rel_diff4(b.r04, kr) <= 1e-9);

    double viol_rr = 0.0, viol_t = 0.0;
    for (size_t i = 0; i < a.rr.data().size(); ++i) {
      viol_rr = std::max(viol_rr, std::abs(b.rr.data()[i] - k * a.rr.data()[i]));
      viol_t = std::max(viol_t, std::abs(b.tach_r.data()[i] - k * k * a.tach_r.data()[i]));
    }
    CHECK(viol_rr / (1.0 + b.rr.max_abs()) <= 1e-9);
    CHECK(viol_t / (1.0 + b.tach_c.max_abs() + b.tach_r.max_abs()) <= 1e-9);
  }
}

TEST_CASE("jet and finite-difference bundles agree") {
  DiffConfig fd = DiffConfig::fd_mode();
  for (const char* name : {"sol", "product_s2xe1"}) {
    MetricField f = catalog_metric(name);
    for (const ChartPoint& p : sample_points(f, 5, 59)) {
      CurvatureBundle a = curvature_bundle(f, p, kJet);
      CurvatureBundle b = curvature_bundle(f, p, fd);
      double viol = 0.0;
      for (size_t i = 0; i < a.r04.data().size(); ++i)
        viol = std::max(viol, std::abs(a.r04.data()[i] - b.r04.data()[i]));
      CHECK(viol / (1.0 + a.r04.max_abs()) <= 1e-5);
    }
  }
}

TEST_CASE("bundle_from_r04 reproduces the field bundle algebra") {
  MetricField f = catalog_metric("sol");
  ChartPoint p = ChartPoint::Zero(3);
  CurvatureBundle a = curvature_bundle(f, p, kJet);
  CurvatureBundle b = bundle_from_r04(a.g, a.r04);
  CHECK(rel_diff4(a.r13, b.r13) <= 1e-13);
  CHECK((a.ricci - b.ricci).cwiseAbs().maxCoeff() <= 1e-13);
  double viol = 0.0;
  for (size_t i = 0; i < a.rr.data().size(); ++i)
    viol = std::max(viol, std::abs(a.rr.data()[i] - b.rr.data()[i]));
  CHECK(viol <= 1e-12);
}

TEST_CASE("weyl_tensor rejects n < 3") {
  Eigen::MatrixXd g = Eigen::MatrixXd::Identity(2, 2);
  Tensor4 r(2);
  CHECK_THROWS_AS(weyl_tensor(r, g, 0.0, g), std::invalid_argument);
}
