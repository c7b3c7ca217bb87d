#include <cmath>

#include "doctest.h"
#include "fixtures.hpp"
#include "routhk/errors.hpp"
#include "routhk/examples.hpp"
#include "routhk/reconstruction.hpp"

using namespace routhk;

namespace {

double closed_form_gap(const FieldSample& rec, const AnalyticField& exact) {
  double gap = 0.0;
  const Grid& g = rec.grid();
  for (std::size_t node = 0; node < g.size(); ++node) {
    const auto want = exact.value(g.point(node));
    const auto have = rec.at(node);
    for (std::size_t i = 0; i < want.size(); ++i) gap = std::max(gap, std::abs(have[i] - want[i]));
  }
  return gap;
}

}  // namespace

TEST_CASE("Navier reconstruction matches the closed form") {
  const auto c = load_example("navier");
  const auto& sol = c.solution("xy");
  const Grid g = Grid::cube(2, -1.0, 1.0, 21);
  const auto rec = reconstruct_solution(c, sol, g, c.default_mu);
  CHECK(closed_form_gap(rec, *sol.reconstruction) <= 1e-12);
  CHECK(el_residual(c.lagrangian, rec).max_abs() <= 1e-9);
}

TEST_CASE("reconstruction is independent of the axis order") {
  const auto c = load_example("navier");
  const auto red = c.reduction();
  const auto constraints = level_set_constraints(red);
  const Grid g = Grid::cube(2, -1.0, 1.0, 21);
  const auto field = FieldSample::sample(g, c.solution("xy").field);
  const std::vector<double> anchor{0.0};
  ReconstructionOptions forward{c.chart, std::nullopt, {0, 1}};
  ReconstructionOptions backward{c.chart, std::nullopt, {1, 0}};
  const auto a = reconstruct_abelian(constraints, field, anchor, forward);
  const auto b = reconstruct_abelian(constraints, field, anchor, backward);
  double gap = 0.0;
  for (std::size_t i = 0; i < a.values().size(); ++i) gap = std::max(gap, std::abs(a.values()[i] - b.values()[i]));
  CHECK(gap <= 1e-12);
}

TEST_CASE("vanishing constraints reproduce the anchor") {
  MomentumConstraints zero{1, 2, [](std::span<const double>, const KJet&) { return Matrix(1, 2); }, {}};
  const Grid g = Grid::cube(2, 0.0, 1.0, 7);
  const AnalyticField base{1, 2, [](std::span<const Dual2> t) { return std::vector<Dual2>{t[0] * t[1]}; }};
  const auto field = FieldSample::sample(g, base);
  const std::vector<double> anchor{2.5};
  const auto rec = reconstruct_abelian(zero, field, anchor);
  REQUIRE(rec.n() == 2);
  for (std::size_t node = 0; node < g.size(); ++node) {
    // Base entries pass through unchanged and the fibre stays at the anchor.
    CHECK(rec.at(node)[0] == field.at(node)[0]);
    CHECK(rec.at(node)[1] == 2.5);
  }
}

TEST_CASE("inconsistent constraints are rejected") {
  const auto c = load_example("navier");
  const auto constraints = level_set_constraints(c.reduction());
  const Grid g = Grid::cube(2, -1.0, 1.0, 21);
  const auto field = FieldSample::sample(g, c.solution("coscosh").field);
  const auto report = consistency_check(constraints, field);
  CHECK(report.exact);
  CHECK(report.gap >= 0.1);
  CHECK_FALSE(report.consistent());
  CHECK_THROWS_AS(reconstruct_abelian(constraints, field, std::vector<double>{0.0}, {c.chart}),
                  InconsistentConstraints);
  const auto ok = consistency_check(constraints, FieldSample::sample(g, c.solution("xy").field));
  CHECK(ok.gap <= 1e-12);
}

TEST_CASE("level-set constraints of Navier") {
  const auto c = load_example("navier");
  const auto constraints = level_set_constraints(c.reduction());
  const KJet base({0.3}, {0.2, 0.5}, 2);
  const Matrix w = constraints.velocities(std::vector<double>{0.0, 0.0}, base);
  // u1_x = (mu1 - (lambda + nu) u2_y)/(lambda + 2 nu), u1_y = mu2/nu.
  CHECK(w(0, 0) == doctest::Approx((1.0 - 3.0 * 0.5) / 4.0).epsilon(1e-13));
  CHECK(w(0, 1) == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("reconstruction equation right-hand side") {
  const auto c = load_example("navier");
  const Grid g = Grid::cube(2, -1.0, 1.0, 5);
  const auto& sol = c.solution("xy");
  const auto lifted = FieldSample::sample(g, *sol.reconstruction);
  const auto velocities = [](std::span<const double> t, std::span<const double>) {
    // Vertical part of the lifted field: d_a phi^1 minus its horizontal lift.
    const double x = t[0];
    return Matrix::from_rows({{(2.0 - 6.0 * x) / 8.0, 1.0}, {0.0, 0.0}});
  };
  const auto rhs = reconstruction_rhs(c.connection, velocities, lifted);
  for (std::size_t row = 0; row < rhs.nodes.size(); ++row) {
    const double x = g.point(rhs.nodes[row])[0];
    CHECK(rhs.at(row)[0] == doctest::Approx((2.0 - 6.0 * x) / 8.0).epsilon(1e-14));
    CHECK(rhs.at(row)[1] == doctest::Approx(1.0).epsilon(1e-14));
  }
}

TEST_CASE("the printed closed form differs from the reconstruction by an affine map") {
  const double lambda = 2.0, nu = 1.0, mu1 = 1.0, mu2 = 1.0;
  const AnalyticField printed{2, 2, [=](std::span<const Dual2> t) {
                                const Dual2& x = t[0];
                                const Dual2& y = t[1];
                                return std::vector<Dual2>{
                                    (mu1 * x - (lambda + nu) * x * x) / (2 * (lambda + 2 * nu)) - mu2 / nu * y,
                                    x * y};
                              }};
  const auto c = load_example("navier");
  const Grid g = Grid::cube(2, -1.0, 1.0, 11);
  const auto field = FieldSample::sample(g, printed);
  CHECK(el_residual(c.lagrangian, field).max_abs() <= 1e-12);
  const auto dev = momentum_constancy(c.lagrangian, c.symmetry, field, c.default_mu);
  CHECK(dev.max() >= 0.1);
}
