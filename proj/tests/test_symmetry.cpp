#include <doctest.h>

#include <cmath>

#include "curvsym/symmetry.hpp"
#include "curvsym/util.hpp"

using namespace curvsym;

namespace {

const DiffConfig kJet = DiffConfig::jet_mode();

Plane random_nondegenerate_plane(const Eigen::MatrixXd& g, uint64_t& state) {
  for (;;) {
    Plane pi = random_plane(int(g.rows()), state);
    if (plane_gram_det(g, pi) > 1e-6) return pi;
  }
}

}  // namespace

TEST_CASE("sectional_K: flat space and hyperbolic space form") {
  MetricField e = catalog_metric("euclidean", {{"n", 3}});
  CurvatureBundle be = curvature_bundle(e, ChartPoint::Zero(3), kJet);
  uint64_t state = 5;
  for (int i = 0; i < 10; ++i) {
    Plane pi = random_nondegenerate_plane(be.g, state);
    CHECK(sectional_K(be, pi) == 0.0);
  }

  MetricField h = catalog_metric("space_form", {{"n", 3}, {"c", -1.0}});
  auto pts = sample_points(h, 10, 3);
  int planes_checked = 0;
  for (const ChartPoint& p : pts) {
    CurvatureBundle b = curvature_bundle(h, p, kJet);
    for (int i = 0; i < 5; ++i) {
      Plane pi = random_nondegenerate_plane(b.g, state);
      CHECK(sectional_K(b, pi) == doctest::Approx(-1.0).epsilon(1e-9));
      ++planes_checked;
    }
  }
  CHECK(planes_checked == 50);
}

TEST_CASE("sectional_K: basis invariance") {
  MetricField sol = catalog_metric("sol");
  ChartPoint p(3);
  p << 0.2, -0.1, 0.3;
  CurvatureBundle b = curvature_bundle(sol, p, kJet);
  Plane pi{Eigen::Vector3d(1, 0.5, -0.2), Eigen::Vector3d(0, 1, 0.7)};
  double k1 = sectional_K(b, pi);
  Plane pi2{2.0 * pi.v + 3.0 * pi.w, pi.w};
  CHECK(sectional_K(b, pi2) == doctest::Approx(k1).epsilon(1e-10));
}

TEST_CASE("sectional_K: degenerate plane rejected") {
  MetricField e = catalog_metric("euclidean", {{"n", 2}});
  CurvatureBundle b = curvature_bundle(e, ChartPoint::Zero(2), kJet);
  Plane bad{Eigen::Vector2d(1, 0), Eigen::Vector2d(2, 0)};
  CHECK_THROWS_AS(sectional_K(b, bad), std::invalid_argument);
}

TEST_CASE("deszcz_L: space forms are curvature independent for every pair") {
  MetricField f = catalog_metric("space_form", {{"n", 3}, {"c", 1.0}});
  uint64_t state = 7;
  for (const ChartPoint& p : sample_points(f, 5, 7)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    for (int i = 0; i < 10; ++i) {
      Plane pi = random_nondegenerate_plane(b.g, state);
      Plane pibar = random_nondegenerate_plane(b.g, state);
      CHECK_FALSE(deszcz_L(b, pi, pibar, kJet.tol).has_value());
    }
  }
}

TEST_CASE("deszcz_L: sol gives -1 on curvature-dependent pairs") {
  MetricField sol = catalog_metric("sol");
  uint64_t state = 11;
  int dependent = 0;
  for (const ChartPoint& p : sample_points(sol, 20, 11)) {
    CurvatureBundle b = curvature_bundle(sol, p, kJet);
    for (int i = 0; i < 50; ++i) {
      Plane pi = random_nondegenerate_plane(b.g, state);
      Plane pibar = random_nondegenerate_plane(b.g, state);
      auto L = deszcz_L(b, pi, pibar, kJet.tol);
      if (!L) continue;
      ++dependent;
      CHECK(*L == doctest::Approx(-1.0).epsilon(1e-8));
    }
  }
  CHECK(dependent > 500);  // generic pairs are curvature dependent
}

TEST_CASE("deszcz_L: products have vanishing R.R, so L = 0 where defined") {
  MetricField f = catalog_metric("thurston", {{"m", 0.25}, {"l", 0.0}});
  uint64_t state = 13;
  for (const ChartPoint& p : sample_points(f, 5, 13)) {
    CurvatureBundle b = curvature_bundle(f, p, kJet);
    CHECK(b.rr.max_abs() / ((1.0 + b.r04.max_abs()) * (1.0 + b.r04.max_abs())) <= 1e-9);
    for (int i = 0; i < 20; ++i) {
      Plane pi = random_nondegenerate_plane(b.g, state);
      Plane pibar = random_nondegenerate_plane(b.g, state);
      auto L = deszcz_L(b, pi, pibar, kJet.tol);
      if (L) CHECK(*L == doctest::Approx(0.0).epsilon(1e-8));
    }
  }
}

TEST_CASE("deszcz_L: basis invariance of both planes") {
  MetricField sol = catalog_metric("sol");
  ChartPoint p(3);
  p << 0.1, 0.2, -0.3;
  CurvatureBundle b = curvature_bundle(sol, p, kJet);
  uint64_t state = 17;
  int checked = 0;
  while (checked < 10) {
    Plane pi = random_nondegenerate_plane(b.g, state);
    Plane pibar = random_nondegenerate_plane(b.g, state);
    auto L1 = deszcz_L(b, pi, pibar, kJet.tol);
    if (!L1) continue;
    Plane pi2{0.7 * pi.v - 1.1 * pi.w, 2.0 * pi.w + 0.4 * pi.v};
    Plane pibar2{pibar.w * -1.0, pibar.v};  // swap + flip keeps the plane
    auto L2 = deszcz_L(b, pi2, pibar2, kJet.tol);
    REQUIRE(L2.has_value());
    CHECK(std::abs(*L1 - *L2) <= 1e-9 * (1.0 + std::abs(*L1)));
    ++checked;
  }
}

TEST_CASE("fit_pseudo_coefficient: exact proportionality and degeneracies") {
  uint64_t state = 23;
  Tensor6 den(2);
  for (double& v : den.data()) v = 2.0 * unit_double(splitmix64(state)) - 1.0;
  Tensor6 num = den;
  for (double& v : num.data()) v *= 2.0;
  PseudoFit fit = fit_pseudo_coefficient(num, den, kJet.tol);
  CHECK(fit.verdict == FitVerdict::proportional);
  CHECK(fit.coefficient == doctest::Approx(2.0).epsilon(1e-14));
  CHECK(fit.residual <= 1e-12);

  Tensor6 zero(2);
  PseudoFit both = fit_pseudo_coefficient(zero, zero, kJet.tol);
  CHECK(both.verdict == FitVerdict::zero_denominator_zero_numerator);
  CHECK(both.holds());

  PseudoFit degenerate = fit_pseudo_coefficient(num, zero, kJet.tol);
  CHECK(degenerate.verdict == FitVerdict::zero_denominator_nonzero_numerator);
  CHECK_FALSE(degenerate.holds());

  for (double& v : num.data()) v = 2.0 * unit_double(splitmix64(state)) - 1.0;
  PseudoFit off = fit_pseudo_coefficient(num, den, kJet.tol);
  CHECK(off.verdict == FitVerdict::not_proportional);
}

TEST_CASE("fit_pseudo_coefficient: sol bundle gives L = -1") {
  MetricField sol = catalog_metric("sol");
  for (const ChartPoint& p : sample_points(sol, 10, 29)) {
    CurvatureBundle b = curvature_bundle(sol, p, kJet);
    PseudoFit fit = fit_pseudo_coefficient(b.rr, b.tach_r, kJet.tol);
    CHECK(fit.verdict == FitVerdict::proportional);
    CHECK(fit.coefficient == doctest::Approx(-1.0).epsilon(1e-8));
    CHECK(fit.residual <= 1e-9);
  }
}

TEST_CASE("ricci_spectrum examples") {
  MetricField s3 = catalog_metric("space_form", {{"n", 3}, {"c", 1.0}});
  CurvatureBundle b = curvature_bundle(s3, ChartPoint::Zero(3), kJet);
  RicciSpectrum sp = ricci_spectrum(b, kJet.tol);
  REQUIRE(sp.cluster_values.size() == 1);
  CHECK(sp.cluster_values[0] == doctest::Approx(2.0).epsilon(1e-10));
  CHECK(sp.multiplicities[0] == 3);
  CHECK(sp.einstein);
  CHECK(sp.quasi_einstein);

  MetricField sol = catalog_metric("sol");
  CurvatureBundle bs = curvature_bundle(sol, ChartPoint::Zero(3), kJet);
  RicciSpectrum ss = ricci_spectrum(bs, kJet.tol);
  REQUIRE(ss.cluster_values.size() == 2);
  std::vector<int> mults = ss.multiplicities;
  std::sort(mults.begin(), mults.end());
  CHECK(mults == std::vector<int>{1, 2});
  CHECK_FALSE(ss.einstein);
  CHECK(ss.quasi_einstein);  // proper quasi-Einstein
  // eigenvalues are {-2, 0, 0}
  CHECK(ss.eigenvalues.front() == doctest::Approx(-2.0).epsilon(1e-10));
  CHECK(std::abs(ss.eigenvalues.back()) <= 1e-10);

  MetricField e = catalog_metric("euclidean", {{"n", 4}});
  RicciSpectrum se = ricci_spectrum(curvature_bundle(e, ChartPoint::Zero(4), kJet), kJet.tol);
  REQUIRE(se.cluster_values.size() == 1);
  CHECK(se.cluster_values[0] == 0.0);
  CHECK(se.multiplicities[0] == 4);
}

TEST_CASE("nullity_index examples") {
  MetricField e = catalog_metric("euclidean", {{"n", 3}});
  CHECK(nullity_index(curvature_bundle(e, ChartPoint::Zero(3), kJet), kJet.tol) == 3);

  MetricField s3 = catalog_metric("space_form", {{"n", 3}, {"c", 1.0}});
  CHECK(nullity_index(curvature_bundle(s3, ChartPoint::Zero(3), kJet), kJet.tol) == 0);

  // S^2 x E^1: the flat factor direction spans the nullity space
  MetricField pr = catalog_metric("thurston", {{"m", 0.25}, {"l", 0.0}});
  for (const ChartPoint& p : sample_points(pr, 5, 31)) {
    CHECK(nullity_index(curvature_bundle(pr, p, kJet), kJet.tol) == 1);
  }
}

TEST_CASE("classify: space form aggregates") {
  MetricField f = catalog_metric("space_form", {{"n", 4}, {"c", -1.0}});
  auto pts = sample_points(f, 10, 37);
  ClassificationReport rep = classify(f, pts, 10, kJet, 37);
  const auto& a = rep.aggregate;
  CHECK(a.constant_curvature);
  CHECK(a.semi_symmetric);
  CHECK(a.pseudo_symmetric);
  CHECK(a.einstein);
  CHECK_FALSE(a.flat);
  CHECK(a.schur_applicable);
  CHECK(a.schur_constant);
  CHECK(a.schur_c_mean == doctest::Approx(-1.0).epsilon(1e-9));
}

TEST_CASE("classify: sol is pseudo-symmetric of constant type -1, not semi-symmetric") {
  MetricField sol = catalog_metric("sol");
  auto pts = sample_points(sol, 20, 41);
  ClassificationReport rep = classify(sol, pts, 20, kJet, 41);
  const auto& a = rep.aggregate;
  CHECK_FALSE(a.semi_symmetric);
  CHECK(a.pseudo_symmetric);
  CHECK(a.quasi_einstein);
  CHECK_FALSE(a.einstein);
  CHECK(a.constant_type);
  CHECK(a.L_R_defined_count == 20);
  CHECK(a.L_R_mean == doctest::Approx(-1.0).epsilon(1e-8));
  for (const auto& pc : rep.per_point) {
    CHECK(pc.nullity == 0);
    CHECK(pc.plane_dependent > 0);
    CHECK(pc.L_sample_mean == doctest::Approx(-1.0).epsilon(1e-7));
  }
}

TEST_CASE("classify: ladder monotonicity holds on every report") {
  for (const char* name :
       {"euclidean", "sol", "product_s2xe1", "product_h2xe1"}) {
    MetricField f = name == std::string("euclidean")
                        ? catalog_metric(name, {{"n", 3}})
                        : catalog_metric(name);
    auto pts = sample_points(f, 10, 43);
    ClassificationReport rep = classify(f, pts, 5, kJet, 43);
    for (const auto& pc : rep.per_point) {
      if (pc.flat) CHECK(pc.constant_curvature);
      if (pc.constant_curvature) CHECK(pc.semi_symmetric);
      if (pc.semi_symmetric) CHECK(pc.pseudo_symmetric);
      if (pc.einstein) CHECK(pc.quasi_einstein);
    }
  }
}

TEST_CASE("classify: isotropy of L for sol and the Heisenberg geometry") {
  for (auto [name, m, l] :
       {std::tuple<const char*, double, double>{"sol", 0.0, 0.0},
        std::tuple<const char*, double, double>{"thurston", 0.0, 1.0}}) {
    MetricField f = name == std::string("sol") ? catalog_metric("sol")
                                               : catalog_metric("thurston", {{"m", m}, {"l", l}});
    auto pts = sample_points(f, 20, 47);
    ClassificationReport rep = classify(f, pts, 50, kJet, 47);
    for (const auto& pc : rep.per_point) {
      CHECK(pc.plane_dependent > 0);
      CHECK(pc.L_sample_stddev <= 1e-6 * (1.0 + std::abs(pc.L_sample_mean)));
    }
  }
}

TEST_CASE("classify: 3D equivalence pseudo-symmetric <=> quasi-Einstein") {
  // catalog 3D metrics
  std::vector<MetricField> fields;
  fields.push_back(catalog_metric("euclidean", {{"n", 3}}));
  fields.push_back(catalog_metric("space_form", {{"n", 3}, {"c", 1.0}}));
  fields.push_back(catalog_metric("space_form", {{"n", 3}, {"c", -1.0}}));
  fields.push_back(catalog_metric("sol"));
  fields.push_back(catalog_metric("thurston", {{"m", 0.25}, {"l", 0.0}}));
  fields.push_back(catalog_metric("thurston", {{"m", -0.25}, {"l", 0.0}}));
  fields.push_back(catalog_metric("thurston", {{"m", 0.0}, {"l", 1.0}}));
  fields.push_back(catalog_metric("thurston", {{"m", -0.25}, {"l", 1.0}}));
  fields.push_back(catalog_metric("thurston", {{"m", 0.25}, {"l", 1.0}}));

  // plus seeded random low-amplitude perturbations of euclidean(3)
  uint64_t state = 1234;
  for (int k = 0; k < 10; ++k) {
    auto coef = [&state]() {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%.6f", 0.05 * (2.0 * unit_double(splitmix64(state)) - 1.0));
      return std::string(buf);
    };
    std::string text = "dim 3\ncoords x y z\n";
    text += "g 0 0 = 1 + " + coef() + "*sin(y + z) + " + coef() + "*cos(x)\n";
    text += "g 1 1 = 1 + " + coef() + "*cos(x + z) + " + coef() + "*sin(y)\n";
    text += "g 2 2 = 1 + " + coef() + "*sin(x + y) + " + coef() + "*cos(z)\n";
    text += "g 0 1 = " + coef() + "*sin(z)\n";
    text += "g 0 2 = " + coef() + "*cos(y)\n";
    text += "g 1 2 = " + coef() + "*sin(x)\n";
    fields.push_back(parse_metric_spec(text, "perturbed3_" + std::to_string(k)));
  }

  for (const MetricField& f : fields) {
    auto pts = sample_points(f, 10, 53);
    ClassificationReport rep = classify(f, pts, 0, kJet, 53);
    for (const auto& pc : rep.per_point) {
      CHECK(pc.quasi_einstein == pc.pseudo_symmetric);
    }
  }
}

TEST_CASE("classify: thurston(1/4, 1) realizes the round sphere of curvature 1/4") {
  MetricField f = catalog_metric("thurston", {{"m", 0.25}, {"l", 1.0}});
  auto pts = sample_points(f, 10, 59);
  ClassificationReport rep = classify(f, pts, 0, kJet, 59);
  CHECK(rep.aggregate.constant_curvature);
  CHECK(rep.aggregate.schur_constant);
  CHECK(rep.aggregate.schur_c_mean == doctest::Approx(0.25).epsilon(1e-9));
}

TEST_CASE("classify: 3D proper quasi-Einstein L_R equals half the simple Ricci value") {
  // Nil: Ricci eigenvalues {-1/2, -1/2, +1/2}; the simple one gives L = 1/4
  MetricField nil = catalog_metric("thurston", {{"m", 0.0}, {"l", 1.0}});
  auto pts = sample_points(nil, 10, 61);
  ClassificationReport rep = classify(nil, pts, 0, kJet, 61);
  CHECK(rep.aggregate.L_R_mean == doctest::Approx(0.25).epsilon(1e-8));
  for (const auto& pc : rep.per_point) {
    REQUIRE(pc.spectrum.cluster_values.size() == 2);
    double simple = pc.spectrum.multiplicities[0] == 1 ? pc.spectrum.cluster_values[0]
                                                       : pc.spectrum.cluster_values[1];
    REQUIRE(pc.L_R.has_value());
    CHECK(*pc.L_R == doctest::Approx(simple / 2.0).epsilon(1e-8));
  }
}
