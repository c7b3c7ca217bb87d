#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "routhk/jets.hpp"
#include "routhk/linalg.hpp"
#include "routhk/report.hpp"
#include "routhk/routh.hpp"

namespace routhk {

/// Velocities w^i_a of the group (fibre) coordinates prescribed by the
/// momentum constraints along a reduced field.
struct MomentumConstraints {
  std::size_t fibre_n = 0;
  std::size_t k = 0;
  /// (t, reduced jet) -> fibre_n x k matrix w.
  std::function<Matrix(std::span<const double>, const KJet&)> velocities;
  /// Optional exact derivatives of w: (fibre_n*k) x (k + base dim) matrix,
  /// row i + fibre_n*a, columns (t, q, v) of the reduced jet.
  std::function<Matrix(std::span<const double>, const KJet&)> jacobian;
};

/// Constraints coming from the level-set lift of a Routh reduction.
MomentumConstraints level_set_constraints(const RouthReduction& red);

struct ConsistencyReport {
  double gap = 0.0;        ///< max |d_b w^i_a - d_a w^i_b| over interior nodes
  double tolerance = 0.0;  ///< acceptance threshold for this grid and mode
  bool exact = false;      ///< outer derivatives taken exactly
  bool consistent() const { return gap <= tolerance; }
};

/// Exact-mode acceptance threshold for consistency gaps.
inline constexpr double kExactConsistencyTol = 1e-8;

/// Mixed-partial test of the constraints along the reduced field. When
/// `tol` is not given the threshold is kExactConsistencyTol in exact mode and
/// 10 h^2 times a second-derivative scale of w in stencil mode.
ConsistencyReport consistency_check(const MomentumConstraints& constraints,
                                    const FieldSample& field,
                                    DerivativeMode mode = DerivativeMode::Auto,
                                    std::optional<double> tol = std::nullopt);

struct ReconstructionOptions {
  /// Full configuration layout; base entries come from the reduced field and
  /// fibre entries from quadrature. Defaults to base first, fibre appended.
  std::optional<BundleChart> chart;
  /// Anchor node; defaults to the low corner of the grid.
  std::optional<MultiIndex> anchor;
  /// Axis integration order; defaults to 0, 1, ..., k-1.
  std::vector<std::size_t> axis_order;
  DerivativeMode mode = DerivativeMode::Auto;
  std::optional<double> tol;
};

/// Integrates the fibre velocities by trapezoid quadrature from the anchor,
/// one axis after the other. Throws InconsistentConstraints when the
/// consistency check fails.
FieldSample reconstruct_abelian(const MomentumConstraints& constraints, const FieldSample& field,
                                std::span<const double> anchor_value,
                                const ReconstructionOptions& options = {});

/// Evaluates A on the k components of X along a lifted field: the right-hand
/// side g^-1 dg/dt^a of the reconstruction equation. `x` maps (t, q) to the
/// n x k velocity matrix of X at phi(t). Component gamma + m*a per node.
NodalReport reconstruction_rhs(
    const ConnectionOneForm& conn,
    const std::function<Matrix(std::span<const double>, std::span<const double>)>& x,
    const FieldSample& lifted_field);

}  // namespace routhk
