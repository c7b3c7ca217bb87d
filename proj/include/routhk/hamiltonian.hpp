#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "routhk/jets.hpp"
#include "routhk/lagrangian.hpp"
#include "routhk/linalg.hpp"
#include "routhk/symmetry_model.hpp"

namespace routhk {

/// Hamiltonian on the k-covelocity bundle, given either as a dual-capable
/// function of (q, p) or as the Legendre dual E_L o (FL)^-1 of a regular
/// Lagrangian.
class HamiltonianSystem {
 public:
  /// `h` takes q and p with p_i^a at p[i + n*a].
  HamiltonianSystem(std::size_t n, std::size_t k, JetFunction h, std::string label = {});

  /// H = E_L o (FL)^-1, with FL inverted by Newton iteration.
  static HamiltonianSystem legendre_dual(LagrangianSystem sys);

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t dim() const { return n_ + n_ * k_; }
  const std::string& label() const { return label_; }

  double value(const KCojet& alpha) const;
  /// Exact gradient in (q, p).
  std::vector<double> gradient(const KCojet& alpha) const;

 private:
  HamiltonianSystem() = default;
  void check(const KCojet& alpha) const;

  std::size_t n_ = 0, k_ = 0;
  std::string label_;
  std::function<double(const KCojet&)> value_;
  std::function<std::vector<double>(const KCojet&)> gradient_;
};

/// Solves FL(jet) = alpha for the velocities by Newton iteration from v = 0.
/// Throws NewtonDivergence when no solution is found in 50 steps.
KJet inverse_legendre(const LagrangianSystem& sys, const KCojet& alpha);

/// Constant matrix of omega_Q^a = dq^i ^ dp_i^a in the basis (q, p).
Matrix canonical_form(std::size_t n, std::size_t k, std::size_t a);

/// J^a(xi_beta) = p_i^a Lambda^i_beta(q) as an m x k matrix.
MomentumValue cotangent_momentum(const SymmetryModel& sym, const KCojet& alpha);

/// (alpha^1 - A_{mu_1}, ..., alpha^k - A_{mu_k}).
KCojet momentum_shift(const ConnectionOneForm& conn, const MomentumValue& mu, const KCojet& alpha);

/// For each a: (S* omega^a)(u, w) - (omega^a + d A_{mu_a})(u, w), with S the
/// momentum shift. Tangent vectors are in the (q, p) basis.
std::vector<double> shift_identity_residual(const ConnectionOneForm& conn, const MomentumValue& mu,
                                            const KCojet& alpha, std::span<const double> u,
                                            std::span<const double> w);

using KVectorFieldOnCojets = std::function<std::vector<std::vector<double>>(const KCojet&)>;

/// sum_a (X_a contracted into omega_Q^a) - dH.
std::vector<double> kham_residual(const HamiltonianSystem& sys, const KVectorFieldOnCojets& x,
                                  const KCojet& alpha);

/// Pushes a tangent vector at a jet forward through FL.
std::vector<double> legendre_pushforward(const LagrangianSystem& sys, const KJet& jet,
                                         std::span<const double> tangent);

}  // namespace routhk
