#include <doctest.h>

#include <cmath>

#include "curvsym/expr.hpp"

using namespace curvsym;

namespace {

double eval_d(const ExprPtr& e, std::vector<double> coords, std::vector<double> params = {}) {
  return eval_expr<double>(*e, coords, params);
}

ExprPtr parse(const std::string& s, std::vector<std::string> coords = {"x", "y"},
              std::vector<std::string> params = {}) {
  return parse_expression(s, coords, params);
}

}  // namespace

TEST_CASE("expression grammar and precedence") {
  CHECK(eval_d(parse("1 + 2*3"), {0, 0}) == 7.0);
  CHECK(eval_d(parse("(1 + 2)*3"), {0, 0}) == 9.0);
  CHECK(eval_d(parse("2*x^2"), {3, 0}) == 18.0);
  CHECK(eval_d(parse("-x^2"), {3, 0}) == -9.0);  // unary minus binds looser than ^
  CHECK(eval_d(parse("x^-2"), {2, 0}) == 0.25);
  CHECK(eval_d(parse("6/3/2"), {0, 0}) == 1.0);  // left associative
  CHECK(eval_d(parse("1 - 2 - 3"), {0, 0}) == -4.0);
  CHECK(eval_d(parse("2e-2 + 1.5"), {0, 0}) == doctest::Approx(1.52));
  CHECK(eval_d(parse("exp(0)"), {0, 0}) == 1.0);
  CHECK(eval_d(parse("sqrt(x*x)"), {4, 0}) == 4.0);
  CHECK(eval_d(parse("sinh(x)*2 + cosh(0)"), {0, 0}) == 1.0);
  CHECK(eval_d(parse("log(exp(1))"), {0, 0}) == doctest::Approx(1.0));
  CHECK(eval_d(parse("sin(x)^2 + cos(x)^2"), {0.7, 0}) == doctest::Approx(1.0));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(parse("1 + "), ParseError);
  CHECK_THROWS_AS(parse("foo + 1"), ParseError);
  CHECK_THROWS_AS(parse("exp 2"), ParseError);
  CHECK_THROWS_AS(parse("x^y"), ParseError);  // exponent must be an integer literal
  CHECK_THROWS_AS(parse("(x"), ParseError);
  CHECK_THROWS_AS(parse("x 1"), ParseError);

  try {
    parse_expression("1 + undeclared", {"x"}, {}, 3, 10);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
    CHECK(e.col > 10);
    CHECK(std::string(e.what()).find("undeclared") != std::string::npos);
  }
}

TEST_CASE("jet evaluation produces exact derivatives") {
  // f(x, y) = exp(2x)*y + x^3
  auto e = parse("exp(2*x)*y + x^3");
  std::vector<Jet2> coords = {Jet2::variable(0.4, 2, 0), Jet2::variable(-1.2, 2, 1)};
  Jet2 v = eval_expr<Jet2>(*e, coords, {});

  const double ex = std::exp(0.8);
  CHECK(v.v == doctest::Approx(ex * -1.2 + 0.064));
  CHECK(v.d[0] == doctest::Approx(2 * ex * -1.2 + 3 * 0.16));
  CHECK(v.d[1] == doctest::Approx(ex));
  CHECK(v.h(0, 0) == doctest::Approx(4 * ex * -1.2 + 6 * 0.4));
  CHECK(v.h(0, 1) == doctest::Approx(2 * ex));
  CHECK(v.h(1, 0) == doctest::Approx(2 * ex));
  CHECK(v.h(1, 1) == 0.0);
}

TEST_CASE("jet chain rule for the catalog function set") {
  // compare against central differences for a composite using each function
  auto e = parse("sin(x)*cosh(y) + log(2 + x^2)*sqrt(4 + y^2) - sinh(x)/cos(y)");
  auto f = [&](double x, double y) { return eval_d(e, {x, y}); };
  const double x0 = 0.3, y0 = -0.6, h = 1e-5;

  std::vector<Jet2> coords = {Jet2::variable(x0, 2, 0), Jet2::variable(y0, 2, 1)};
  Jet2 v = eval_expr<Jet2>(*e, coords, {});

  CHECK(v.d[0] ==
        doctest::Approx((f(x0 + h, y0) - f(x0 - h, y0)) / (2 * h)).epsilon(1e-8));
  CHECK(v.d[1] ==
        doctest::Approx((f(x0, y0 + h) - f(x0, y0 - h)) / (2 * h)).epsilon(1e-8));
  CHECK(v.h(0, 0) ==
        doctest::Approx((f(x0 + h, y0) - 2 * f(x0, y0) + f(x0 - h, y0)) / (h * h))
            .epsilon(1e-4));
  CHECK(v.h(0, 1) == doctest::Approx((f(x0 + h, y0 + h) - f(x0 + h, y0 - h) -
                                      f(x0 - h, y0 + h) + f(x0 - h, y0 - h)) /
                                     (4 * h * h))
                         .epsilon(1e-4));
}

TEST_CASE("evaluation domain errors") {
  CHECK_THROWS_AS(eval_d(parse("log(x)"), {-1, 0}), EvalError);
  CHECK_THROWS_AS(eval_d(parse("1/x"), {0, 0}), EvalError);
  CHECK_THROWS_AS(eval_d(parse("x^-1"), {0, 0}), EvalError);
  std::vector<Jet2> coords = {Jet2::variable(0.0, 1, 0)};
  auto sq = parse_expression("sqrt(x)", {"x"}, {});
  CHECK_THROWS_AS(eval_expr<Jet2>(*sq, coords, {}), EvalError);
}

TEST_CASE("printer round trip") {
  std::vector<std::string> coords = {"x", "y"};
  std::vector<std::string> params = {"c"};
  auto e = parse_expression("-(1 + c/4*(x^2 + y^2))^-2 + sin(x)*y/7 - 2.5e-3", coords, params);
  std::string text = expr_to_text(*e, coords, params);
  auto e2 = parse_expression(text, coords, params);
  for (double x : {-0.7, 0.0, 0.4, 1.3}) {
    for (double y : {-1.0, 0.2, 0.9}) {
      CHECK(eval_expr<double>(*e, std::vector<double>{x, y}, std::vector<double>{0.8}) ==
            eval_expr<double>(*e2, std::vector<double>{x, y}, std::vector<double>{0.8}));
    }
  }
}

TEST_CASE("params evaluate as constants in jet mode") {
  auto e = parse_expression("c*x", {"x"}, {"c"});
  std::vector<Jet2> coords = {Jet2::variable(2.0, 1, 0)};
  std::vector<double> params = {3.0};
  Jet2 v = eval_expr<Jet2>(*e, coords, params);
  CHECK(v.v == 6.0);
  CHECK(v.d[0] == 3.0);
  CHECK(v.h(0, 0) == 0.0);
}
