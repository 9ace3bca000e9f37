#include <doctest.h>

#include <cmath>

#include "curvsym/metric.hpp"

using namespace curvsym;

TEST_CASE("catalog: euclidean evaluates to the identity everywhere") {
  MetricField f = catalog_metric("euclidean", {{"n", 3}});
  ChartPoint p(3);
  p << 0.3, -0.8, 0.1;
  CHECK((f.value(p) - Eigen::MatrixXd::Identity(3, 3)).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("catalog: space form conformal factor is 1 at the origin") {
  MetricField f = catalog_metric("space_form", {{"n", 2}, {"c", 1.0}});
  CHECK((f.value(ChartPoint::Zero(2)) - Eigen::MatrixXd::Identity(2, 2))
            .cwiseAbs()
            .maxCoeff() == 0.0);
}

TEST_CASE("catalog: sol at (0,0,1) is diag(e^2, e^-2, 1)") {
  MetricField f = catalog_metric("sol");
  ChartPoint p(3);
  p << 0.0, 0.0, 1.0;
  Eigen::MatrixXd g = f.value(p);
  CHECK(g(0, 0) == doctest::Approx(std::exp(2.0)).epsilon(1e-15));
  CHECK(g(1, 1) == doctest::Approx(std::exp(-2.0)).epsilon(1e-15));
  CHECK(g(2, 2) == 1.0);
  CHECK(g(0, 1) == 0.0);
}

TEST_CASE("catalog: parameter validity") {
  CHECK_THROWS_AS(catalog_metric("nonsense"), std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("space_form", {{"n", 3}}), std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("thurston", {{"m", 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(
      catalog_metric("thurston",
                     {{"m", std::numeric_limits<double>::infinity()}, {"l", 0.0}}),
      std::invalid_argument);
  CHECK_THROWS_AS(catalog_metric("euclidean", {{"n", 1}}), std::invalid_argument);
}

TEST_CASE("catalog: space form domain keeps the conformal base away from zero") {
  for (double c : {-1.0, -4.0}) {
    for (int n : {2, 3, 4}) {
      MetricField f = catalog_metric("space_form", {{"n", double(n)}, {"c", c}});
      // at every corner of the box: 1 + (c/4) sum x^2 >= 1/2
      double r2 = 0.0;
      for (int i = 0; i < n; ++i) {
        double w = std::max(std::abs(f.domain().lo[i]), std::abs(f.domain().hi[i]));
        r2 += w * w;
      }
      CHECK(1.0 + c / 4.0 * r2 >= 0.5 - 1e-12);
    }
  }
}

TEST_CASE("catalog name parser") {
  MetricField f1 = catalog_metric_from_string("space_form(3,c=-1)");
  CHECK(f1.dim() == 3);
  CHECK(f1.param_values()[0] == -1.0);
  MetricField f2 = catalog_metric_from_string("thurston(0.25,1)");
  CHECK(f2.param_values()[0] == 0.25);
  CHECK(f2.param_values()[1] == 1.0);
  MetricField f3 = catalog_metric_from_string("euclidean", 4);
  CHECK(f3.dim() == 4);
  CHECK_THROWS_AS(catalog_metric_from_string("thurston(1,2,3)"), std::invalid_argument);
}

TEST_CASE("metric spec parser: minimal 1x1 document") {
  MetricField f = parse_metric_spec("dim 1\ncoords t\ng 0 0 = 1\n");
  CHECK(f.dim() == 1);
  ChartPoint p(1);
  p << 0.37;
  CHECK(f.value(p)(0, 0) == 1.0);
}

TEST_CASE("metric spec parser: sol document matches the catalog metric") {
  const std::string text =
      "# sol geometry\n"
      "dim 3\n"
      "coords x y z\n"
      "g 0 0 = exp(2*z)\n"
      "g 1 1 = exp(-2*z)\n"
      "g 2 2 = 1\n";
  MetricField parsed = parse_metric_spec(text);
  MetricField cat = catalog_metric("sol");
  // cross-evaluation oracle at seeded sample points of the parsed field
  for (const ChartPoint& p : sample_points(parsed, 10, 99)) {
    CHECK((parsed.value(p) - cat.value(p)).cwiseAbs().maxCoeff() <= 1e-15);
  }
}

TEST_CASE("metric spec parser: off-diagonal mirroring") {
  const std::string text =
      "dim 2\ncoords x y\ng 0 0 = 2\ng 1 1 = 2\ng 0 1 = x\n";
  MetricField f = parse_metric_spec(text);
  ChartPoint p(2);
  p << 0.25, 0.0;
  Eigen::MatrixXd g = f.value(p);
  CHECK(g(0, 1) == 0.25);
  CHECK(g(0, 1) == g(1, 0));  // exact mirroring, not approximate
}

TEST_CASE("metric spec parser: diagnostics") {
  using Catch = ParseError;
  // syntax error with position
  CHECK_THROWS_AS(parse_metric_spec("dim 2\ncoords x y\ng 0 0 = 1 +\ng 1 1 = 1\n"), Catch);
  // undeclared coordinate
  CHECK_THROWS_AS(parse_metric_spec("dim 2\ncoords x y\ng 0 0 = w\ng 1 1 = 1\n"), Catch);
  // missing diagonal entry
  CHECK_THROWS_AS(parse_metric_spec("dim 2\ncoords x y\ng 0 0 = 1\n"), Catch);
  // dim mismatch in coords
  CHECK_THROWS_AS(parse_metric_spec("dim 3\ncoords x y\ng 0 0 = 1\n"), Catch);
  // index out of range
  CHECK_THROWS_AS(parse_metric_spec("dim 2\ncoords x y\ng 0 2 = 1\ng 1 1 = 1\n"), Catch);
  // conflicting entry given in both orders
  CHECK_THROWS_AS(
      parse_metric_spec("dim 2\ncoords x y\ng 0 0 = 1\ng 1 1 = 1\ng 0 1 = x\ng 1 0 = y\n"),
      Catch);
  // empty document
  CHECK_THROWS_AS(parse_metric_spec(""), Catch);
  try {
    parse_metric_spec("dim 2\ncoords x y\ng 0 0 = 1\ng 1 1 = 1 + oops\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 4);
  }
}

TEST_CASE("metric spec printer round trip") {
  const std::string text =
      "dim 3\n"
      "coords x y z\n"
      "param a = 0.3\n"
      "g 0 0 = 1 + a*sin(x)*cos(y)\n"
      "g 1 1 = 2 + z^2\n"
      "g 2 2 = exp(a*z)\n"
      "g 0 2 = a*x*y/10\n";
  MetricField f = parse_metric_spec(text);
  MetricField f2 = parse_metric_spec(print_metric_spec(f));
  for (const ChartPoint& p : sample_points(f, 10, 5)) {
    CHECK((f.value(p) - f2.value(p)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("sample_points: determinism and domain constraint") {
  MetricField f = catalog_metric("euclidean", {{"n", 2}});
  auto a = sample_points(f, 5, 7);
  auto b = sample_points(f, 5, 7);
  REQUIRE(a.size() == 5);
  for (size_t i = 0; i < a.size(); ++i) CHECK((a[i] - b[i]).cwiseAbs().maxCoeff() == 0.0);
  auto c = sample_points(f, 5, 8);
  bool identical = true;
  for (size_t i = 0; i < a.size(); ++i)
    if ((a[i] - c[i]).cwiseAbs().maxCoeff() != 0.0) identical = false;
  CHECK_FALSE(identical);

  MetricField h = catalog_metric("space_form", {{"n", 2}, {"c", -1.0}});
  for (const ChartPoint& p : sample_points(h, 20, 1)) {
    CHECK(1.0 - 0.25 * p.squaredNorm() > 0.0);
    CHECK(h.domain().contains(p));
  }
}

TEST_CASE("sample_points: positive definiteness holds at every sample") {
  MetricField f = catalog_metric("sol");
  auto pts = sample_points(f, 100, 3);
  REQUIRE(pts.size() == 100);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig;
  for (const ChartPoint& p : pts) {
    eig.compute(f.value(p), Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() > 0.0);
  }
}

TEST_CASE("evaluated matrices are exactly symmetric (mirrored storage)") {
  MetricField f = catalog_metric("thurston", {{"m", -0.25}, {"l", 1.0}});
  for (const ChartPoint& p : sample_points(f, 25, 11)) {
    Eigen::MatrixXd g = f.value(p);
    CHECK((g - g.transpose()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("thurston(0,0) evaluates identically to euclidean(3)") {
  MetricField t = catalog_metric("thurston", {{"m", 0.0}, {"l", 0.0}});
  MetricField e = catalog_metric("euclidean", {{"n", 3}});
  for (const ChartPoint& p : sample_points(t, 20, 4)) {
    CHECK((t.value(p) - e.value(p)).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("product aliases match their thurston realizations") {
  MetricField s2 = catalog_metric("product_s2xe1");
  MetricField t = catalog_metric("thurston", {{"m", 0.25}, {"l", 0.0}});
  ChartPoint p(3);
  p << 0.4, -0.2, 0.7;
  CHECK((s2.value(p) - t.value(p)).cwiseAbs().maxCoeff() == 0.0);
  CHECK(s2.name() == "product_s2xe1");
}

TEST_CASE("scaled metric multiplies every component") {
  MetricField f = catalog_metric("sol");
  MetricField f2 = f.scaled(3.0, "sol_x3");
  ChartPoint p(3);
  p << 0.1, 0.2, -0.4;
  CHECK((f2.value(p) - 3.0 * f.value(p)).cwiseAbs().maxCoeff() <= 1e-15);
  CHECK_THROWS_AS(f.scaled(-1.0, "bad"), std::invalid_argument);
}
