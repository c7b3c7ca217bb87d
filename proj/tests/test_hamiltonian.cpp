#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "routhk/errors.hpp"
#include "routhk/hamiltonian.hpp"
#include "routhk/liegroup.hpp"

using namespace routhk;

TEST_CASE("Legendre dual of Navier") {
  const double lambda = 2.0, nu = 1.0;
  const auto sys = fixtures::navier(lambda, nu);
  const auto ham = HamiltonianSystem::legendre_dual(sys);
  std::mt19937_64 rng(1);
  const Matrix hinv = inverse(hessian(sys, fixtures::random_jet(rng, 2, 2)));
  for (int s = 0; s < 10; ++s) {
    const KJet jet = fixtures::random_jet(rng, 2, 2);
    const KCojet alpha = legendre(sys, jet);
    CHECK(std::abs(ham.value(alpha) - energy(sys, jet)) <= 1e-12);
    // H = 1/2 p^T Hess^-1 p and dH/dp recovers the velocities.
    const auto hp = hinv * alpha.p;
    double quad = 0.0;
    for (std::size_t i = 0; i < 4; ++i) quad += 0.5 * alpha.p[i] * hp[i];
    CHECK(std::abs(ham.value(alpha) - quad) <= 1e-12);
    const auto grad = ham.gradient(alpha);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(grad[2 + i] - jet.v[i]) <= 1e-10);
    const KJet back = inverse_legendre(sys, alpha);
    for (std::size_t i = 0; i < 4; ++i) CHECK(std::abs(back.v[i] - jet.v[i]) <= 1e-12);
  }
}

TEST_CASE("inverse Legendre fails on a degenerate Lagrangian") {
  const auto sys = fixtures::navier(2.0, 0.0);
  const KCojet alpha({0.0, 0.0}, {1.0, 1.0, 1.0, 1.0}, 2);
  CHECK_THROWS(inverse_legendre(sys, alpha));
}

TEST_CASE("canonical forms") {
  for (std::size_t a = 0; a < 3; ++a) {
    const Matrix w = canonical_form(2, 3, a);
    CHECK((w + w.transpose()).max_abs() == 0.0);
    for (std::size_t i = 0; i < 2; ++i) {
      CHECK(w(i, 2 + i + 2 * a) == 1.0);
      CHECK(w(2 + i + 2 * a, i) == -1.0);
    }
    double sum = 0.0;
    for (double v : w.data()) sum += std::abs(v);
    CHECK(sum == 4.0);
  }
}

TEST_CASE("k-Hamiltonian residual") {
  const HamiltonianSystem ham(1, 2, [](std::span<const Dual2>, std::span<const Dual2> p) {
    return 0.5 * (p[0] * p[0] + p[1] * p[1]);
  });
  auto field = [](Matrix d) -> KVectorFieldOnCojets {
    return [d](const KCojet& alpha) {
      std::vector<std::vector<double>> out;
      for (std::size_t a = 0; a < 2; ++a) out.push_back({alpha.p[a], d(a, 0), d(a, 1)});
      return out;
    };
  };
  const KCojet alpha({0.4}, {1.2, -0.3}, 2);
  CHECK(norm_inf(kham_residual(ham, field(Matrix::from_rows({{2, 1}, {1, -2}})), alpha)) <= 1e-15);
  CHECK(norm_inf(kham_residual(ham, field(Matrix::from_rows({{1, 0}, {0, 1}})), alpha)) == doctest::Approx(2.0));
}

TEST_CASE("Legendre pushforward maps a second-order field to a Hamiltonian one") {
  const auto sys = fixtures::laplace(2);
  const auto ham = HamiltonianSystem::legendre_dual(sys);
  const KJet jet({0.3}, {0.5, -1.0}, 2);
  std::vector<std::vector<double>> pushed;
  for (std::size_t a = 0; a < 2; ++a) {
    const std::vector<double> c = a == 0 ? std::vector<double>{0.4, 0.9} : std::vector<double>{0.9, -0.4};
    const std::vector<double> gamma{jet.v[a], c[0], c[1]};
    pushed.push_back(legendre_pushforward(sys, jet, gamma));
  }
  const KVectorFieldOnCojets x = [&pushed](const KCojet&) { return pushed; };
  CHECK(norm_inf(kham_residual(ham, x, legendre(sys, jet))) <= 1e-10);
}

TEST_CASE("momentum shift identity") {
  std::mt19937_64 rng(9);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  auto random_vec = [&](std::size_t n) {
    std::vector<double> x(n);
    for (auto& v : x) x[&v - x.data()] = u(rng);
    return x;
  };
  SUBCASE("constant connection") {
    const auto conn = ConnectionOneForm::constant(Matrix::from_rows({{1.0, 0.0}}));
    const MomentumValue mu = Matrix::from_rows({{1.0, -2.0}});
    const KCojet alpha(random_vec(2), random_vec(4), 2);
    const auto r = shift_identity_residual(conn, mu, alpha, random_vec(6), random_vec(6));
    CHECK(norm_inf(r) <= 1e-14);
  }
  SUBCASE("mechanical connection of A410") {
    const auto conn = mechanical_connection_form(a410::model(0.8));
    MomentumValue mu(4, 2);
    mu(2, 0) = 1.0;
    mu(0, 1) = 0.5;
    mu(3, 1) = -1.0;
    for (int s = 0; s < 5; ++s) {
      const KCojet alpha(random_vec(5), random_vec(10), 2);
      const auto r = shift_identity_residual(conn, mu, alpha, random_vec(15), random_vec(15));
      CHECK(norm_inf(r) <= 1e-8);
    }
  }
}

TEST_CASE("cotangent momentum") {
  const auto sym = fixtures::full_translation();
  const KCojet alpha({0.1, 0.2}, {1.0, 2.0, 3.0, 4.0}, 2);
  const Matrix j = cotangent_momentum(sym, alpha);
  CHECK((j - Matrix::from_rows({{1.0, 3.0}, {2.0, 4.0}})).max_abs() == 0.0);
}
