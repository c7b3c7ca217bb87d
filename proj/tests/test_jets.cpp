#include <cmath>
#include <random>
#include <sstream>

#include "doctest.h"
#include "routhk/errors.hpp"
#include "routhk/jets.hpp"

using namespace routhk;

namespace {

AnalyticField coscosh_field(double c) {
  return {1, 2, [c](std::span<const Dual2> t) {
            return std::vector<Dual2>{cos(t[0]) * cosh(c * t[1])};
          }};
}

double max_prolong_gap(const Grid& g, const AnalyticField& f) {
  const FieldSample exact = FieldSample::sample(g, f);
  const FieldSample fd = exact.without_exact();
  double gap = 0.0;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const auto node = g.unflatten(n);
    const KJet a = prolong(exact, node), b = prolong(fd, node);
    for (std::size_t j = 0; j < a.v.size(); ++j) gap = std::max(gap, std::abs(a.v[j] - b.v[j]));
  }
  return gap;
}

}  // namespace

TEST_CASE("prolongation of a product field") {
  const Grid g = Grid::cube(2, 0.0, 2.0, 5);
  const AnalyticField f{2, 2, [](std::span<const Dual2> t) {
                          return std::vector<Dual2>{t[0] * t[1], t[0] + 3.0 * t[1]};
                        }};
  const FieldSample s = FieldSample::sample(g, f);
  const KJet j = prolong(s, {2, 2});  // t = (1, 1)
  CHECK(j.q[0] == 1.0);
  CHECK(j.vel(0, 0) == 1.0);
  CHECK(j.vel(0, 1) == 1.0);
  CHECK(j.vel(1, 0) == 1.0);
  CHECK(j.vel(1, 1) == 3.0);
  const KJet jf = prolong(s.without_exact(), {2, 2});
  CHECK(jf.vel(0, 0) == doctest::Approx(1.0));
  CHECK(jf.vel(1, 1) == doctest::Approx(3.0));
}

TEST_CASE("constant field has zero velocities") {
  const Grid g = Grid::cube(2, -1.0, 1.0, 5);
  const FieldSample s(g, 2, std::vector<double>(g.size() * 2, 4.0));
  for (std::size_t n = 0; n < g.size(); ++n) {
    const KJet j = prolong(s, g.unflatten(n));
    for (double v : j.v) CHECK(std::abs(v) <= 1e-14);
  }
}

TEST_CASE("prolongation of cos(x)cosh(cy) at the origin") {
  const double lam = 2.0, nu = 1.0;
  const double c = std::sqrt((lam + 2 * nu) / (2 * lam + 3 * nu));
  const Grid g = Grid::cube(2, -1.0, 1.0, 21);
  const FieldSample s = FieldSample::sample(g, coscosh_field(c));
  const KJet j = prolong(s, {10, 10});
  CHECK(j.q[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(std::abs(j.vel(0, 0)) <= 1e-15);
  CHECK(std::abs(j.vel(0, 1)) <= 1e-15);
  const auto second = second_derivatives(s, {10, 10});
  CHECK(second[0](0, 0) == doctest::Approx(-1.0));
  CHECK(second[0](1, 1) == doctest::Approx(c * c));
}

TEST_CASE("stencil prolongation converges at second order") {
  const AnalyticField f = coscosh_field(0.8);
  const Grid coarse = Grid::cube(2, -1.0, 1.0, 11);
  const double e1 = max_prolong_gap(coarse, f);
  const double e2 = max_prolong_gap(coarse.refined(), f);
  const double ratio = e1 / e2;
  CHECK(ratio >= 3.5);
  CHECK(ratio <= 4.5);
}

TEST_CASE("pairing examples") {
  CHECK(pairing(KCojet({0.0}, {0.0, 0.0}, 2), KJet({0.0}, {5.0, 6.0}, 2)) == 0.0);
  CHECK(pairing(KCojet({1.0}, {2.0}, 1), KJet({1.0}, {3.0}, 1)) == 6.0);
  KCojet p(2, 2);
  KJet v(2, 2);
  for (std::size_t i = 0; i < 2; ++i) {
    p.mom(i, i) = 1.0;
    v.vel(i, i) = 1.0;
  }
  CHECK(pairing(p, v) == 2.0);
  CHECK_THROWS_AS(pairing(KCojet({1.0}, {2.0}, 1), KJet({1.1}, {3.0}, 1)), BasePointMismatch);
}

TEST_CASE("pairing is bilinear") {
  std::mt19937 rng(3);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20; ++trial) {
    KCojet al(3, 2), be(3, 2);
    KJet v(3, 2);
    for (std::size_t i = 0; i < 3; ++i) al.q[i] = be.q[i] = v.q[i] = u(rng);
    for (auto& x : al.p) x = u(rng);
    for (auto& x : be.p) x = u(rng);
    for (auto& x : v.v) x = u(rng);
    const double a = u(rng), b = u(rng);
    KCojet mix = al;
    for (std::size_t j = 0; j < mix.p.size(); ++j) mix.p[j] = a * al.p[j] + b * be.p[j];
    CHECK(std::abs(pairing(mix, v) - (a * pairing(al, v) + b * pairing(be, v))) <= 1e-12);
  }
}

TEST_CASE("jets reject non-finite entries and bad shapes") {
  CHECK_THROWS_AS(KJet({NAN}, {0.0}, 1), NumericalFailure);
  CHECK_THROWS_AS(KJet({0.0}, {0.0, 1.0, 2.0}, 2), IndexError);
  const Grid g = Grid::cube(1, 0, 1, 3);
  CHECK_THROWS_AS(FieldSample(g, 1, {0.0, INFINITY, 1.0}), NumericalFailure);
  CHECK_THROWS_AS(FieldSample(g, 1, {0.0, 1.0}), IndexError);
}

TEST_CASE("field CSV round trip") {
  const Grid g({-1.0, 0.0}, {1.0, 0.5}, {3, 4});
  const AnalyticField f{2, 2, [](std::span<const Dual2> t) {
                          return std::vector<Dual2>{sin(t[0]) / 3.0, t[0] * t[1] + 0.1};
                        }};
  const FieldSample s = FieldSample::sample(g, f);
  std::stringstream ss;
  write_csv(ss, s);
  const std::string text = ss.str();
  CHECK(text.rfind("t1,t2,phi1,phi2\n", 0) == 0);
  const FieldSample back = read_field_csv(ss, g);
  CHECK(back.values() == s.values());
  std::stringstream again;
  write_csv(again, back);
  CHECK(again.str() == text);
}
