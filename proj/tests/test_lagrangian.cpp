#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "routhk/errors.hpp"
#include "routhk/lagrangian.hpp"

using namespace routhk;

namespace {

AnalyticField navier_xy(double lambda, double nu, double mu1, double mu2) {
  return {2, 2, [=](std::span<const Dual2> t) {
            const Dual2& x = t[0];
            const Dual2& y = t[1];
            return std::vector<Dual2>{
                (2 * mu1 * x - (lambda + nu) * x * x) / (2 * (lambda + 2 * nu)) + mu2 * y / nu,
                x * y};
          }};
}

}  // namespace

TEST_CASE("Navier velocity Hessian") {
  const double lambda = 2.0, nu = 1.0;
  const auto sys = fixtures::navier(lambda, nu);
  std::mt19937_64 rng(1);
  const KJet jet = fixtures::random_jet(rng, 2, 2);
  const Matrix h = hessian(sys, jet);
  const Matrix expected = Matrix::from_rows({{lambda + 2 * nu, 0, 0, lambda + nu},
                                             {0, nu, 0, 0},
                                             {0, 0, nu, 0},
                                             {lambda + nu, 0, 0, lambda + 2 * nu}});
  CHECK((h - expected).max_abs() == 0.0);
  CHECK(determinant(h) == doctest::Approx(7.0).epsilon(1e-14));
}

TEST_CASE("Navier Hessian determinant over parameters") {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int s = 0; s < 100; ++s) {
    const double lambda = u(rng), nu = u(rng);
    const auto sys = fixtures::navier(lambda, nu);
    const double det = determinant(hessian(sys, fixtures::random_jet(rng, 2, 2)));
    const double expected = nu * nu * nu * (2 * lambda + 3 * nu);
    CHECK(std::abs(det - expected) <= 1e-12 * std::max(1.0, std::abs(expected)));
  }
}

TEST_CASE("regularity") {
  std::mt19937_64 rng(3);
  std::vector<KJet> jets;
  for (int s = 0; s < 5; ++s) jets.push_back(fixtures::random_jet(rng, 2, 2));
  CHECK(is_regular(fixtures::navier(2.0, 1.0), jets).regular);
  CHECK_FALSE(is_regular(fixtures::navier(2.0, 0.0), jets).regular);
  CHECK_FALSE(is_regular(fixtures::navier(-1.5, 1.0), jets).regular);
}

TEST_CASE("Legendre map and derivatives against finite differences") {
  const auto sys = fixtures::navier(2.0, 1.0);
  const LagrangianSystem curved(2, 2, [](std::span<const Dual2> q, std::span<const Dual2> v) {
    return 0.5 * exp(q[0]) * (v[0] * v[0] + v[2] * v[2]) + sin(q[1]) * v[1] * v[3] - cosh(q[0] * q[1]);
  });
  std::mt19937_64 rng(4);
  for (int s = 0; s < 10; ++s) {
    const KJet jet = fixtures::random_jet(rng, 2, 2);
    CHECK(legendre_fd_gap(sys, jet) <= 1e-8);
    CHECK(legendre_fd_gap(curved, jet) <= 1e-8);
    CHECK(hessian_fd_gap(curved, jet) <= 1e-7);
  }
}

TEST_CASE("energy equals the Lagrangian for a quadratic Lagrangian") {
  const auto sys = fixtures::navier(2.0, 1.0);
  std::mt19937_64 rng(5);
  for (int s = 0; s < 10; ++s) {
    const KJet jet = fixtures::random_jet(rng, 2, 2, 2.0);
    CHECK(std::abs(energy(sys, jet) - sys.value(jet)) <= 1e-12);
    const auto p = legendre(sys, jet);
    CHECK(std::abs(pairing(p, jet) - 2 * sys.value(jet)) <= 1e-12);
  }
}

TEST_CASE("Euler-Lagrange residual of a Navier solution") {
  const double lambda = 2.0, nu = 1.0;
  const auto sys = fixtures::navier(lambda, nu);
  const auto field = navier_xy(lambda, nu, 1.0, 1.0);
  const Grid g = Grid::cube(2, -1.0, 1.0, 11);
  const auto exact = el_residual(sys, FieldSample::sample(g, field), DerivativeMode::Exact);
  CHECK(exact.max_abs() <= 1e-12);
  // Quadratic field: the stencil residual is exact up to rounding.
  const auto stencil = el_residual(sys, FieldSample::sample(g, field), DerivativeMode::Stencil);
  CHECK(stencil.max_abs() <= 1e-10);
  const AnalyticField wrong{2, 2, [](std::span<const Dual2> t) {
                              return std::vector<Dual2>{t[0] * t[0], Dual2(0.0)};
                            }};
  CHECK(el_residual(sys, FieldSample::sample(g, wrong)).max_abs() == doctest::Approx(2 * (lambda + 2 * nu)));
}

TEST_CASE("stencil residual converges at second order") {
  const auto sys = fixtures::laplace(2);
  const AnalyticField f{1, 2, [](std::span<const Dual2> t) {
                          return std::vector<Dual2>{sin(t[0]) * sinh(t[1])};
                        }};
  const Grid coarse = Grid::cube(2, -1.0, 1.0, 41);
  const double rc = el_residual(sys, FieldSample::sample(coarse, f).without_exact()).max_abs();
  const double rf = el_residual(sys, FieldSample::sample(coarse.refined(), f).without_exact()).max_abs();
  CHECK(rc / rf >= 3.5);
  CHECK(rc / rf <= 4.5);
  CHECK(el_residual(sys, FieldSample::sample(coarse, f), DerivativeMode::Exact).max_abs() <= 1e-13);
}

TEST_CASE("polysymplectic forms") {
  const auto sys = fixtures::navier(2.0, 1.0);
  std::mt19937_64 rng(6);
  const KJet jet = fixtures::random_jet(rng, 2, 2);
  for (std::size_t a = 0; a < 2; ++a) {
    const Matrix w = lag_polysymplectic_form(sys, jet, a);
    CHECK((w + w.transpose()).max_abs() == 0.0);
  }
}

TEST_CASE("k-symplectic residual of a second-order field") {
  const auto sys = fixtures::laplace(2);
  // Gamma_a = v_a d/dq + C_ab d/dv_b solves the field equations iff C is trace-free.
  auto gamma_for = [](Matrix c) -> KVectorFieldOnJets {
    return [c](const KJet& jet) {
      std::vector<std::vector<double>> out;
      for (std::size_t a = 0; a < 2; ++a) out.push_back({jet.v[a], c(a, 0), c(a, 1)});
      return out;
    };
  };
  std::mt19937_64 rng(7);
  for (int s = 0; s < 5; ++s) {
    const KJet jet = fixtures::random_jet(rng, 1, 2);
    CHECK(norm_inf(ksym_residual(sys, gamma_for(Matrix::from_rows({{0.7, 0.3}, {0.3, -0.7}})), jet)) <= 1e-14);
    const auto r = ksym_residual(sys, gamma_for(Matrix::from_rows({{1.0, 0.0}, {0.0, 0.0}})), jet);
    CHECK(std::abs(r[0]) == doctest::Approx(1.0));
  }
}

TEST_CASE("jet shape is validated") {
  const auto sys = fixtures::navier(2.0, 1.0);
  CHECK_THROWS_AS(sys.value(KJet({0.0}, {0.0, 0.0}, 2)), IndexError);
}
