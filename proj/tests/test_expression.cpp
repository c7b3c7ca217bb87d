#include <cmath>
#include <numbers>

#include "doctest.h"
#include "routhk/errors.hpp"
#include "routhk/expression.hpp"

using namespace routhk;

namespace {

double eval(const std::string& text, const std::map<std::string, double>& c = {}) {
  return evaluate_constant(text, c);
}

}  // namespace

TEST_CASE("operator precedence and associativity") {
  CHECK(eval("1 + 2*3") == 7.0);
  CHECK(eval("(1 + 2)*3") == 9.0);
  CHECK(eval("2^3^2") == 512.0);
  CHECK(eval("-2^2") == -4.0);
  CHECK(eval("8/4/2") == 1.0);
  CHECK(eval("1 - 2 - 3") == -4.0);
  CHECK(eval("2*-3") == -6.0);
  CHECK(eval("(-2)^3") == -8.0);
  CHECK(eval("2^-1") == 0.5);
  CHECK(eval("1.5e1 + .5") == 15.5);
}

TEST_CASE("functions and constants") {
  CHECK(eval("sin(pi/2)") == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(eval("cos(0)") == 1.0);
  CHECK(eval("cosh(1)^2 - sinh(1)^2") == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(eval("sqrt(lambda + 2*nu)", {{"lambda", 2}, {"nu", 1}}) == 2.0);
  CHECK(eval("4^0.5") == doctest::Approx(2.0).epsilon(1e-15));
}

TEST_CASE("variables evaluate on dual numbers") {
  const auto e = Expression::parse("a*x^2*y + sin(x*y)").compile({{"a", 3.0}}, {"x", "y"});
  const std::vector<double> p{0.7, -1.3};
  const auto d = e(std::span<const Dual2>(make_variables(p)));
  const double x = p[0], y = p[1];
  CHECK(d.value() == doctest::Approx(3 * x * x * y + std::sin(x * y)).epsilon(1e-15));
  CHECK(d.d1(0) == doctest::Approx(6 * x * y + y * std::cos(x * y)).epsilon(1e-14));
  CHECK(d.d1(1) == doctest::Approx(3 * x * x + x * std::cos(x * y)).epsilon(1e-14));
  CHECK(d.d2(0, 1) == doctest::Approx(6 * x + std::cos(x * y) - x * y * std::sin(x * y)).epsilon(1e-14));
  CHECK(d.d2(1, 1) == doctest::Approx(-x * x * std::sin(x * y)).epsilon(1e-14));
  CHECK(e(std::span<const double>(p)) == doctest::Approx(d.value()).epsilon(1e-15));
}

TEST_CASE("constant subexpressions are folded") {
  const auto e = Expression::parse("(lambda + nu)/2").compile({{"lambda", 2}, {"nu", 1}}, {"x"});
  CHECK(e.is_constant());
  CHECK(e.constant_value() == 1.5);
  const auto f = Expression::parse("x + nu").compile({{"nu", 1}}, {"x"});
  CHECK_FALSE(f.is_constant());
  CHECK_THROWS_AS(f.constant_value(), InvalidParameters);
}

TEST_CASE("identifiers are listed") {
  const auto ids = Expression::parse("b*sin(a) + b + pi").identifiers();
  CHECK(ids == std::vector<std::string>{"a", "b"});
}

TEST_CASE("malformed expressions are rejected") {
  CHECK_THROWS_AS(Expression::parse("1 +"), ParseError);
  CHECK_THROWS_AS(Expression::parse("(1 + 2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("tan(1)"), ParseError);
  CHECK_THROWS_AS(Expression::parse("1 $ 2"), ParseError);
  CHECK_THROWS_AS(Expression::parse("2 3"), ParseError);
  CHECK_THROWS_AS(Expression::parse("x").compile({}, {"y"}), ParseError);
}
