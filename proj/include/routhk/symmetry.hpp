#pragma once

#include <cstddef>
#include <iosfwd>

#include "routhk/jets.hpp"
#include "routhk/lagrangian.hpp"
#include "routhk/report.hpp"
#include "routhk/symmetry_model.hpp"

namespace routhk {

/// J_L at a jet: mu_{beta,a} = dL/dv^i_a Lambda^i_beta(q).
MomentumValue lagrangian_momentum(const LagrangianSystem& sys, const SymmetryModel& sym,
                                  const KJet& jet);

/// Noether divergence D_beta = sum_a d/dt^a (J^a_{xi_beta} o phi1) at interior
/// nodes.
NodalReport noether_divergence(const LagrangianSystem& sys, const SymmetryModel& sym,
                               const FieldSample& field,
                               DerivativeMode mode = DerivativeMode::Auto);

/// J_L o phi1 at every grid node; component beta + m*a holds mu_{beta,a}.
NodalReport momentum_field(const LagrangianSystem& sys, const SymmetryModel& sym,
                           const FieldSample& field);

struct MomentumDeviation {
  Matrix max_abs_deviation;  ///< m x k, max over nodes of |J^a_beta - mu_{beta,a}|
  NodalReport deviation;     ///< signed J - mu at every node, same layout as momentum_field

  double max() const { return max_abs_deviation.max_abs(); }
  /// CSV with header beta,a,max_abs_deviation (1-based indices).
  void write_csv(std::ostream& os) const;
};

MomentumDeviation momentum_constancy(const LagrangianSystem& sys, const SymmetryModel& sym,
                                     const FieldSample& field, const MomentumValue& mu);

/// Jet with v_a replaced by v_a + sum_gamma xi_{gamma,a} (xi_gamma)_Q(q).
KJet shift_by_algebra(const SymmetryModel& sym, const KJet& jet, const Matrix& xi);

/// Exact Jacobian of xi -> J_L(jet shifted by xi), unknowns ordered gamma + m*b.
Matrix momentum_jacobian(const LagrangianSystem& sys, const SymmetryModel& sym, const KJet& jet);

struct GRegularitySolution {
  Matrix xi;            ///< m x k
  int iterations = 0;
  double residual = 0.0;
};

/// Newton iteration from xi = 0 for J_L(jet shifted by xi) = mu, halving the
/// step while the residual grows. Converged when the max residual is at most
/// 1e-10; throws NewtonDivergence after 50 iterations or on a singular
/// Jacobian.
GRegularitySolution solve_g_regularity(const LagrangianSystem& sys, const SymmetryModel& sym,
                                       const KJet& jet, const MomentumValue& mu);

}  // namespace routhk
