#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "routhk/errors.hpp"
#include "routhk/symmetry.hpp"

using namespace routhk;

namespace {

constexpr double kLambda = 2.0, kNu = 1.0;

AnalyticField navier_xy(double mu1, double mu2) {
  return {2, 2, [=](std::span<const Dual2> t) {
            const Dual2& x = t[0];
            const Dual2& y = t[1];
            return std::vector<Dual2>{
                (2 * mu1 * x - (kLambda + kNu) * x * x) / (2 * (kLambda + 2 * kNu)) + mu2 * y / kNu,
                x * y};
          }};
}

}  // namespace

TEST_CASE("Navier momentum map") {
  const auto sys = fixtures::navier(kLambda, kNu);
  const auto sym = fixtures::first_translation();
  std::mt19937_64 rng(1);
  const KJet jet = fixtures::random_jet(rng, 2, 2);
  const Matrix j = lagrangian_momentum(sys, sym, jet);
  REQUIRE(j.rows() == 1);
  REQUIRE(j.cols() == 2);
  CHECK(j(0, 0) == doctest::Approx((kLambda + 2 * kNu) * jet.v[0] + (kLambda + kNu) * jet.v[3]).epsilon(1e-15));
  CHECK(j(0, 1) == doctest::Approx(kNu * jet.v[2]).epsilon(1e-15));
}

TEST_CASE("momentum is conserved along a Navier solution") {
  const auto sys = fixtures::navier(kLambda, kNu);
  const auto sym = fixtures::first_translation();
  const Grid g = Grid::cube(2, -1.0, 1.0, 11);
  const auto field = FieldSample::sample(g, navier_xy(0.3, -0.8));
  CHECK(noether_divergence(sys, sym, field).max_abs() <= 1e-12);
  CHECK(noether_divergence(sys, sym, field, DerivativeMode::Stencil).max_abs() <= 1e-10);
  const auto dev = momentum_constancy(sys, sym, field, Matrix::from_rows({{0.3, -0.8}}));
  CHECK(dev.max() <= 1e-13);
}

TEST_CASE("Noether divergence vanishes on solutions with non-constant momentum") {
  const auto sys = fixtures::navier(kLambda, kNu);
  const auto sym = fixtures::first_translation();
  const AnalyticField f{2, 2, [](std::span<const Dual2> t) {
                          const Dual2& x = t[0];
                          const Dual2& y = t[1];
                          return std::vector<Dual2>{y * y - (kLambda + 3 * kNu) * x * x / (2 * (kLambda + 2 * kNu)),
                                                    x * y};
                        }};
  const Grid g = Grid::cube(2, -1.0, 1.0, 11);
  const auto field = FieldSample::sample(g, f);
  CHECK(noether_divergence(sys, sym, field).max_abs() <= 1e-12);
  const auto mf = momentum_field(sys, sym, field);
  for (std::size_t row = 0; row < mf.nodes.size(); ++row) {
    const double x = g.point(mf.nodes[row])[0];
    CHECK(std::abs(mf.at(row)[0] + 2 * kNu * x) <= 1e-13);
  }
  CHECK(momentum_constancy(sys, sym, field, Matrix(1, 2)).max() == doctest::Approx(2 * kNu));
}

TEST_CASE("full translation group: only affine solutions have constant momentum") {
  const auto sys = fixtures::navier(kLambda, kNu);
  const auto sym = fixtures::full_translation();
  const Grid g = Grid::cube(2, -1.0, 1.0, 11);
  const AnalyticField affine{2, 2, [](std::span<const Dual2> t) {
                               return std::vector<Dual2>{2.0 * t[0] - t[1], 0.5 * t[0] + 3.0 * t[1]};
                             }};
  const auto fa = FieldSample::sample(g, affine);
  const KJet j0 = prolong(fa, {0, 0});
  const auto mu = lagrangian_momentum(sys, sym, j0);
  CHECK(momentum_constancy(sys, sym, fa, mu).max() <= 1e-13);
  const auto fq = FieldSample::sample(g, navier_xy(1.0, 1.0));
  CHECK(el_residual(sys, fq).max_abs() <= 1e-12);
  const auto muq = lagrangian_momentum(sys, sym, prolong(fq, {5, 5}));
  CHECK(momentum_constancy(sys, sym, fq, muq).max() >= 0.5);
}

TEST_CASE("shift by the algebra") {
  const auto sym = fixtures::full_translation();
  const KJet jet({0.1, 0.2}, {1, 2, 3, 4}, 2);
  const KJet s = shift_by_algebra(sym, jet, Matrix::from_rows({{10, 20}, {30, 40}}));
  CHECK(s.v == std::vector<double>{11, 32, 23, 44});
  CHECK(s.q == jet.q);
}

TEST_CASE("G-regularity round trip") {
  const auto sys = fixtures::navier(kLambda, kNu);
  const auto sym = fixtures::first_translation();
  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (int s = 0; s < 20; ++s) {
    const KJet jet = fixtures::random_jet(rng, 2, 2);
    const MomentumValue mu = Matrix::from_rows({{u(rng), u(rng)}});
    const auto sol = solve_g_regularity(sys, sym, jet, mu);
    const Matrix j = lagrangian_momentum(sys, sym, shift_by_algebra(sym, jet, sol.xi));
    CHECK((j - mu).max_abs() <= 1e-10);
    const Matrix j0 = lagrangian_momentum(sys, sym, jet);
    CHECK(sol.xi(0, 0) == doctest::Approx((mu(0, 0) - j0(0, 0)) / (kLambda + 2 * kNu)).epsilon(1e-12));
    CHECK(sol.xi(0, 1) == doctest::Approx((mu(0, 1) - j0(0, 1)) / kNu).epsilon(1e-12));
    const Matrix jac = momentum_jacobian(sys, sym, jet);
    CHECK((jac - Matrix::from_rows({{kLambda + 2 * kNu, 0}, {0, kNu}})).max_abs() <= 1e-14);
  }
}

TEST_CASE("G-regularity fails when lambda + 2 nu vanishes") {
  const auto sys = fixtures::navier(-2.0, 1.0);
  const auto sym = fixtures::first_translation();
  const KJet jet({0, 0}, {0.1, 0.2, 0.3, 0.4}, 2);
  CHECK_THROWS_AS(solve_g_regularity(sys, sym, jet, Matrix::from_rows({{1.0, 1.0}})), NewtonDivergence);
}
