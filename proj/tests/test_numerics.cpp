#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "routhk/differentiate.hpp"
#include "routhk/dual.hpp"
#include "routhk/errors.hpp"
#include "routhk/grid.hpp"
#include "routhk/jets.hpp"
#include "routhk/linalg.hpp"

using namespace routhk;

namespace {

// Navier Lagrangian written out term by term on the velocity block
// (v11, v21, v12, v22), independent of the library examples.
Dual2 navier_l(std::span<const Dual2> v, double lam, double nu) {
  const Dual2 &v11 = v[0], &v21 = v[1], &v12 = v[2], &v22 = v[3];
  return (lam / 2 + nu) * (v11 * v11 + v22 * v22) + nu / 2 * (v12 * v12 + v21 * v21) +
         (lam + nu) * v11 * v22;
}

struct Monomial {
  double c;
  std::vector<int> e;
};

double mono_value(const Monomial& m, const std::vector<double>& x) {
  double r = m.c;
  for (std::size_t i = 0; i < x.size(); ++i) r *= std::pow(x[i], m.e[i]);
  return r;
}

// d/dx_i of a monomial, symbolically.
Monomial mono_diff(const Monomial& m, std::size_t i) {
  Monomial d = m;
  if (m.e[i] == 0) {
    d.c = 0.0;
    return d;
  }
  d.c *= m.e[i];
  d.e[i] -= 1;
  return d;
}

}  // namespace

TEST_CASE("directional derivatives of simple polynomials") {
  const ScalarFunction sq0 = [](std::span<const Dual2> x) { return x[0] * x[0]; };
  const std::vector<double> x{3.0};
  const std::vector<std::vector<double>> dirs{{1.0}};
  const auto d = directional_derivs(sq0, x, dirs);
  CHECK(d.value == 9.0);
  CHECK(d.first[0] == 6.0);
  CHECK(d.second(0, 0) == 2.0);

  const ScalarFunction prod = [](std::span<const Dual2> x) { return x[0] * x[1]; };
  const std::vector<double> y{2.0, 5.0};
  const std::vector<std::vector<double>> e{{1.0, 0.0}, {0.0, 1.0}};
  const auto p = directional_derivs(prod, y, e);
  CHECK(p.second(0, 1) == 1.0);
  CHECK(p.second(1, 0) == 1.0);
  CHECK(p.second(0, 0) == 0.0);
}

TEST_CASE("Navier Lagrangian value at the diagonal jet") {
  const ScalarFunction f = [](std::span<const Dual2> v) { return navier_l(v, 2.0, 1.0); };
  const std::vector<double> v{1.0, 0.0, 0.0, 1.0};
  CHECK(evaluate(f, v) == doctest::Approx(7.0).epsilon(1e-15));
}

TEST_CASE("directional derivatives match symbolic expansion of random polynomials") {
  std::mt19937 rng(20261018);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_int_distribution<int> deg(0, 4);
  std::uniform_int_distribution<int> nterms(1, 5);
  const std::size_t dim = 3;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Monomial> poly;
    const int t = nterms(rng);
    for (int j = 0; j < t; ++j) {
      Monomial m{coef(rng), std::vector<int>(dim, 0)};
      int budget = deg(rng);
      while (budget-- > 0) m.e[static_cast<std::size_t>(rng() % dim)] += 1;
      poly.push_back(m);
    }
    const ScalarFunction f = [&](std::span<const Dual2> x) {
      Dual2 s(0.0);
      for (const auto& m : poly) {
        Dual2 term(m.c);
        for (std::size_t i = 0; i < dim; ++i)
          for (int p = 0; p < m.e[i]; ++p) term = term * x[i];
        s += term;
      }
      return s;
    };
    std::vector<double> x(dim);
    for (auto& xi : x) xi = coef(rng);
    const auto tay = expand(f, x);
    double val = 0.0, scale = 1.0;
    for (const auto& m : poly) {
      val += mono_value(m, x);
      scale += std::abs(mono_value(m, x));
    }
    CHECK(std::abs(tay.value - val) <= 1e-13 * scale);
    for (std::size_t i = 0; i < dim; ++i) {
      double gi = 0.0;
      for (const auto& m : poly) gi += mono_value(mono_diff(m, i), x);
      CHECK(std::abs(tay.gradient[i] - gi) <= 1e-13 * 16 * scale);
      for (std::size_t j = 0; j < dim; ++j) {
        double hij = 0.0;
        for (const auto& m : poly) hij += mono_value(mono_diff(mono_diff(m, i), j), x);
        CHECK(std::abs(tay.hessian(i, j) - hij) <= 1e-13 * 16 * scale);
      }
    }
  }
}

TEST_CASE("dual elementary functions agree with closed-form derivatives") {
  const double x0 = 0.7;
  const auto x = Dual2::variable(x0, 0, 1);
  CHECK(sin(x).d1(0) == doctest::Approx(std::cos(x0)));
  CHECK(sin(x).d2(0, 0) == doctest::Approx(-std::sin(x0)));
  CHECK(cosh(x).d2(0, 0) == doctest::Approx(std::cosh(x0)));
  CHECK(sinh(x).d1(0) == doctest::Approx(std::cosh(x0)));
  CHECK(sqrt(x).d2(0, 0) == doctest::Approx(-0.25 * std::pow(x0, -1.5)));
  CHECK(pow(x, 3.0).d2(0, 0) == doctest::Approx(6 * x0));
  CHECK((1.0 / x).d2(0, 0) == doctest::Approx(2 / (x0 * x0 * x0)));
  const auto r = x / (x * x + 1.0);
  // (x/(x^2+1))' = (1-x^2)/(1+x^2)^2
  CHECK(r.d1(0) == doctest::Approx((1 - x0 * x0) / std::pow(1 + x0 * x0, 2)));
}

TEST_CASE("non-finite derivatives raise NumericalFailure") {
  const ScalarFunction f = [](std::span<const Dual2> x) { return sqrt(x[0]); };
  const std::vector<double> x{0.0};
  const std::vector<std::vector<double>> dirs{{1.0}};
  CHECK_THROWS_AS(directional_derivs(f, x, dirs), NumericalFailure);
}

TEST_CASE("stencil derivative of linear, quadratic and sine fields") {
  const Grid g = Grid::cube(1, 0.0, 1.0, 11);
  std::vector<double> lin(g.size()), quad(g.size());
  for (std::size_t f = 0; f < g.size(); ++f) {
    const double t = g.point(f)[0];
    lin[f] = t;
    quad[f] = t * t;
  }
  const FieldSample lf(g, 1, lin), qf(g, 1, quad);
  for (std::size_t i = 0; i < g.size(); ++i) {
    CHECK(fd_partial(lf, 0, 0, {i}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::abs(fd_partial(qf, 0, 0, {i}) - 2 * g.point(i)[0]) <= 1e-12);
  }
  CHECK(fd_partial(qf, 0, 0, {5}) == doctest::Approx(1.0).epsilon(1e-12));

  const Grid s = Grid::cube(1, -0.05, 0.05, 11);
  std::vector<double> sv(s.size());
  for (std::size_t f = 0; f < s.size(); ++f) sv[f] = std::sin(s.point(f)[0]);
  const double d = fd_partial(FieldSample(s, 1, sv), 0, 0, {5});
  const double h = s.spacing(0);
  CHECK(std::abs(d - 1.0) <= h * h / 6);
  CHECK(d == doctest::Approx(std::sin(h) / h).epsilon(1e-14));

  CHECK_THROWS_AS(fd_partial(lf, 0, 0, {11}), IndexError);
}

TEST_CASE("stencil derivative is exact on quadratic monomials in two variables") {
  const Grid g({-1.0, 0.0}, {1.0, 2.0}, {7, 9});
  std::vector<double> v(g.size() * 3);
  for (std::size_t f = 0; f < g.size(); ++f) {
    const auto t = g.point(f);
    v[3 * f] = t[0] * t[1];
    v[3 * f + 1] = t[1] * t[1];
    v[3 * f + 2] = 1.0;
  }
  const FieldSample fs(g, 3, v);
  for (std::size_t f = 0; f < g.size(); ++f) {
    const auto node = g.unflatten(f);
    const auto t = g.point(f);
    CHECK(std::abs(fd_partial(fs, 0, 0, node) - t[1]) <= 1e-12);
    CHECK(std::abs(fd_partial(fs, 0, 1, node) - t[0]) <= 1e-12);
    CHECK(std::abs(fd_partial(fs, 1, 1, node) - 2 * t[1]) <= 1e-12);
    CHECK(std::abs(fd_partial(fs, 2, 0, node)) <= 1e-12);
  }
}

TEST_CASE("grid construction and indexing") {
  CHECK_THROWS_AS(Grid::cube(2, -1, 1, 2), GridError);
  CHECK_THROWS_AS(Grid({1.0}, {0.0}, {5}), GridError);
  const Grid g({-1.0, 0.0}, {1.0, 1.0}, {5, 3});
  CHECK(g.size() == 15);
  CHECK(g.flatten({2, 1}) == 7);
  CHECK(g.unflatten(7) == MultiIndex{2, 1});
  CHECK(g.point({4, 2})[0] == 1.0);
  CHECK(g.point({4, 2})[1] == 1.0);
  CHECK(g.interior_nodes().size() == 3);
  const std::vector<double> origin{0.0, 0.0};
  CHECK(g.unflatten(g.nearest(origin)) == MultiIndex{2, 0});
  CHECK(g.refined().count(0) == 9);
  CHECK_THROWS_AS(g.flatten({5, 0}), IndexError);
}

TEST_CASE("dense solves") {
  const Matrix id = Matrix::identity(2);
  const std::vector<double> b{1.0, 2.0};
  CHECK(solve_dense(id, b) == b);

  const Matrix a = Matrix::from_rows({{3, 2}, {2, 3}});
  const std::vector<double> five{5.0, 5.0};
  const auto x = solve_dense(a, five);
  CHECK(x[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(x[1] == doctest::Approx(1.0).epsilon(1e-15));

  const Matrix nav = Matrix::from_rows({{4, 0, 0, 3}, {0, 1, 0, 0}, {0, 0, 1, 0}, {3, 0, 0, 4}});
  const std::vector<double> e1{1, 0, 0, 0};
  const auto col = solve_dense(nav, e1);
  const auto back = nav * col;
  for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back[i] - e1[i]) <= 1e-14);
  CHECK(determinant(nav) == doctest::Approx(7.0));

  const Matrix sing = Matrix::from_rows({{1, 2}, {2, 4}});
  CHECK_THROWS_AS(solve_dense(sing, b), SingularMatrix);
  CHECK(min_abs_pivot(sing) < 1e-12);
}

TEST_CASE("random well-conditioned solves round-trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) a(i, j) = u(rng);
      a(i, i) += static_cast<double>(n);  // diagonal dominance keeps cond small
    }
    std::vector<double> b(n);
    for (auto& bi : b) bi = u(rng) * 10;
    const auto x = solve_dense(a, b);
    const auto ax = a * x;
    double err = 0.0;
    for (std::size_t i = 0; i < n; ++i) err = std::max(err, std::abs(ax[i] - b[i]));
    CHECK(err <= 1e-10 * (1 + norm_inf(b)));
  }
}

TEST_CASE("null space of a rank-deficient matrix") {
  const Matrix a = Matrix::from_rows({{1, 1, 0}, {2, 2, 0}});
  const Matrix ns = null_space(a);
  CHECK(ns.cols() == 2);
  for (std::size_t c = 0; c < ns.cols(); ++c) {
    std::vector<double> v{ns(0, c), ns(1, c), ns(2, c)};
    CHECK(norm_inf(a * v) <= 1e-12);
  }
  CHECK(null_space(Matrix::identity(3)).cols() == 0);
}

TEST_CASE("parallel_for writes each slot and rethrows") {
  set_thread_limit(4);
  std::vector<int> out(100, 0);
  parallel_for(out.size(), [&](std::size_t i) { out[i] = static_cast<int>(i) * 2; });
  for (std::size_t i = 0; i < out.size(); ++i) CHECK(out[i] == static_cast<int>(i) * 2);
  CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                    if (i == 3) throw IndexError("boom");
                  }),
                  IndexError);
  set_thread_limit(1);
}
