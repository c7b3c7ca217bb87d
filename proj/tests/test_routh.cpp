#include <cmath>
#include <random>

#include "doctest.h"
#include "fixtures.hpp"
#include "routhk/errors.hpp"
#include "routhk/examples.hpp"
#include "routhk/routh.hpp"

using namespace routhk;

namespace {

// Kaluza-Klein particle on R^2 x S^1: L = 1/2 (x'^2 + y'^2) + 1/2 (s' + x y')^2.
RouthReduction kaluza_klein(double mu) {
  LagrangianSystem sys(3, 1, [](std::span<const Dual2> q, std::span<const Dual2> v) {
    const Dual2 w = v[2] + q[0] * v[1];
    return 0.5 * (v[0] * v[0] + v[1] * v[1]) + 0.5 * w * w;
  });
  SymmetryModel sym(3, StructureConstants(1), fixtures::constant_rows({0.0, 0.0, 1.0}));
  ConnectionOneForm conn(1, 3, [](std::span<const Dual2> q) {
    return std::vector<Dual2>{Dual2(0.0), q[0], Dual2(1.0)};
  });
  BundleChart chart{3, {0, 1}, {0.0, 0.0, 0.0}};
  return RouthReduction(std::move(sys), std::move(sym), std::move(conn), Matrix::from_rows({{mu}}), chart);
}

}  // namespace

TEST_CASE("Navier reduced Routhian coefficients") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.5, 3.0), w(-2.0, 2.0);
  for (int s = 0; s < 10; ++s) {
    const double lambda = u(rng), nu = u(rng), mu1 = w(rng), mu2 = w(rng);
    const auto c = load_example("navier", {{"lambda", lambda}, {"nu", nu}}, Matrix::from_rows({{mu1, mu2}}));
    const auto rs = RouthSystem::from_reduction(c.reduction());
    std::vector<KJet> probes;
    for (int p = 0; p < 4; ++p) probes.push_back(fixtures::random_jet(rng, 1, 2));
    double variation = 1.0;
    const auto qr = rs.quadratic_coefficients(std::vector<double>{0.3}, probes, &variation);
    CHECK(variation <= 1e-9);
    CHECK(qr.quadratic(0, 0) == doctest::Approx(nu).epsilon(1e-10));
    CHECK(qr.quadratic(1, 1) ==
          doctest::Approx(nu * (2 * lambda + 3 * nu) / (lambda + 2 * nu)).epsilon(1e-10));
    CHECK(std::abs(qr.quadratic(0, 1)) <= 1e-10);
    CHECK(std::abs(qr.linear[0]) <= 1e-10);
    CHECK(qr.linear[1] == doctest::Approx(mu1 * (lambda + nu) / (lambda + 2 * nu)).epsilon(1e-10));
    CHECK(qr.constant ==
          doctest::Approx(-mu1 * mu1 / (2 * (lambda + 2 * nu)) - mu2 * mu2 / (2 * nu)).epsilon(1e-10));
    CHECK(rs.magnetic(std::vector<double>{0.3}, 0).max_abs() <= 1e-10);
  }
}

TEST_CASE("Routhian at a full jet") {
  const auto c = load_example("navier");
  const KJet jet({0, 0}, {1, 2, 3, 4}, 2);
  // R = L - mu_a v^1_a with mu = (1, 1).
  CHECK(routhian_full(c.lagrangian, c.connection, c.default_mu, jet) ==
        doctest::Approx(c.lagrangian.value(jet) - 1.0 - 3.0).epsilon(1e-15));
}

TEST_CASE("Kaluza-Klein magnetic sign") {
  const double mu = 1.3;
  const auto red = kaluza_klein(mu);
  const auto rs = RouthSystem::from_reduction(red);
  const KJet base({0.2, -0.4}, {0.5, 0.7}, 1);
  CHECK(rs.value(base) == doctest::Approx(0.5 * (0.25 + 0.49) - 0.5 * mu * mu).epsilon(1e-12));
  const Matrix b = rs.magnetic(std::vector<double>{0.2, -0.4}, 0);
  CHECK(std::abs(b(0, 1)) == doctest::Approx(mu).epsilon(1e-8));
  CHECK(b(0, 1) == doctest::Approx(-b(1, 0)).epsilon(1e-12));
  const Grid g = Grid::cube(1, 0.0, 2.0, 41);
  // x'' = mu y', y'' = -mu x' is solved by (cos mu t, -sin mu t).
  const AnalyticField good{2, 1, [mu](std::span<const Dual2> t) {
                             return std::vector<Dual2>{cos(mu * t[0]), -1.0 * sin(mu * t[0])};
                           }};
  const AnalyticField mirrored{2, 1, [mu](std::span<const Dual2> t) {
                                 return std::vector<Dual2>{cos(mu * t[0]), sin(mu * t[0])};
                               }};
  CHECK(reduced_el_residual(rs, FieldSample::sample(g, good)).max_abs() <= 1e-7);
  CHECK(reduced_el_residual(rs, FieldSample::sample(g, mirrored)).max_abs() >= mu * mu);
}

TEST_CASE("Routh system JSON round trip") {
  const auto c = load_example("navier");
  const auto rs = RouthSystem::from_reduction(c.reduction());
  const auto q = rs.quadratic_coefficients(std::vector<double>{0.0});
  const auto quad = RouthSystem::from_quadratic("navier", 1, 2, c.default_mu, q);
  const auto back = RouthSystem::from_json(quad.to_json());
  REQUIRE(back.coefficients().has_value());
  CHECK((back.coefficients()->quadratic - q.quadratic).max_abs() == 0.0);
  CHECK(back.coefficients()->constant == q.constant);
  const KJet base({0.4}, {0.2, -0.6}, 2);
  CHECK(back.value(base) == doctest::Approx(rs.value(base)).epsilon(1e-12));
  CHECK_THROWS_AS(RouthSystem::from_json("{\"label\": 3}"), ParseError);
}

TEST_CASE("complex scalar reduced Routhian") {
  const auto c = load_example("complex_scalar");
  const double m = 1.0, gc = 1.0;
  const double mu1 = -1.0, mu2 = std::sqrt(1 + m * m + gc);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.5, 2.0), w(-1.0, 1.0);
  for (int s = 0; s < 10; ++s) {
    const double rho = u(rng);
    const KJet base({rho}, {w(rng), w(rng)}, 2);
    const double expected = 0.5 * (-base.v[0] * base.v[0] + base.v[1] * base.v[1]) -
                            (m * m * rho * rho / 2 + gc * rho * rho * rho * rho / 4) -
                            0.5 * (mu1 * mu1 / (-rho * rho) + mu2 * mu2 / (rho * rho));
    CHECK(reduced_routhian(c.reduction(), base) == doctest::Approx(expected).epsilon(1e-12));
    const KJet full = fixtures::random_jet(rng, 2, 2);
    CHECK(std::abs(c.lagrangian.expand(full).gradient[1]) <= 1e-10);
  }
}

TEST_CASE("A410 reduced Routhian is the flat Laplacian") {
  const auto c = load_example("harmonic_a410");
  const auto rs = RouthSystem::from_reduction(c.reduction());
  std::mt19937_64 rng(5);
  std::vector<KJet> probes;
  for (int p = 0; p < 4; ++p) probes.push_back(fixtures::random_jet(rng, 1, 2));
  double variation = 1.0;
  const auto q = rs.quadratic_coefficients(std::vector<double>{0.0}, probes, &variation);
  CHECK(variation <= 1e-8);
  CHECK((q.quadratic - Matrix::identity(2)).max_abs() <= 1e-9);
  CHECK(norm_inf(q.linear) <= 1e-9);
  CHECK(std::abs(q.constant) <= 1e-9);
}

TEST_CASE("bundle chart") {
  const BundleChart chart{3, {2, 0}, {7.0, 8.0, 9.0}};
  CHECK(chart.fibre() == std::vector<std::size_t>{1});
  CHECK(chart.embed(std::vector<double>{1.0, 2.0}) == std::vector<double>{2.0, 8.0, 1.0});
  CHECK(chart.project(std::vector<double>{4.0, 5.0, 6.0}) == std::vector<double>{6.0, 4.0});
}
