#pragma once

#include <random>
#include <vector>

#include "routhk/lagrangian.hpp"
#include "routhk/symmetry_model.hpp"

namespace fixtures {

using namespace routhk;

// Navier-Cauchy elasticity on R^2 with independents (x, y).
inline LagrangianSystem navier(double lambda, double nu) {
  return LagrangianSystem(2, 2, [lambda, nu](std::span<const Dual2>, std::span<const Dual2> v) {
    // v[i + 2a]: v[0] = u1_x, v[1] = u2_x, v[2] = u1_y, v[3] = u2_y
    return (lambda / 2 + nu) * (v[0] * v[0] + v[3] * v[3]) +
           nu / 2 * (v[2] * v[2] + v[1] * v[1]) + (lambda + nu) * v[0] * v[3];
  });
}

inline ConfigurationMatrixFunction constant_rows(std::vector<double> rows) {
  return [rows](std::span<const Dual2>) {
    std::vector<Dual2> out;
    for (double r : rows) out.emplace_back(r);
    return out;
  };
}

// Translations of the first component.
inline SymmetryModel first_translation() {
  return SymmetryModel(2, StructureConstants(1), constant_rows({1.0, 0.0}));
}

// Translations of both components.
inline SymmetryModel full_translation() {
  return SymmetryModel(2, StructureConstants(2), constant_rows({1.0, 0.0, 0.0, 1.0}));
}

// Scalar field with L = 1/2 sum_a (v_a)^2.
inline LagrangianSystem laplace(std::size_t k) {
  return LagrangianSystem(1, k, [](std::span<const Dual2>, std::span<const Dual2> v) {
    Dual2 s(0.0);
    for (const auto& x : v) s += 0.5 * x * x;
    return s;
  });
}

inline KJet random_jet(std::mt19937_64& rng, std::size_t n, std::size_t k, double r = 1.0) {
  std::uniform_real_distribution<double> u(-r, r);
  std::vector<double> q(n), v(n * k);
  for (auto& x : q) x = u(rng);
  for (auto& x : v) x = u(rng);
  return KJet(q, v, k);
}

}  // namespace fixtures
