#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "routhk/jets.hpp"
#include "routhk/lagrangian.hpp"
#include "routhk/report.hpp"
#include "routhk/symmetry.hpp"
#include "routhk/symmetry_model.hpp"

namespace routhk {

/// R(v) = L(v) - sum_a <mu_a, A(v_a)> at a full jet.
double routhian_full(const LagrangianSystem& sys, const ConnectionOneForm& conn,
                     const MomentumValue& mu, const KJet& jet);

/// Local trivialization of Q -> Q/G used by the reduction: the reduced
/// configuration coordinates are the entries `base` of q, and the remaining
/// (fibre) entries are held at `fibre_point`.
struct BundleChart {
  std::size_t n = 0;
  std::vector<std::size_t> base;
  std::vector<double> fibre_point;  ///< full-length q; base entries ignored

  std::vector<std::size_t> fibre() const;
  /// Full configuration point with the base entries replaced by qb.
  std::vector<double> embed(std::span<const double> qb) const;
  std::vector<double> project(std::span<const double> q) const;
};

/// Value, gradient and Hessian of the reduced Routhian at a base jet, plus
/// the level-set lift used to compute it.
struct ReducedExpansion {
  Taylor2 routhian;  ///< in base coordinates (q, v)
  KJet lifted;       ///< full jet on the momentum level set
  Matrix xi;         ///< m x k algebra velocity added to the horizontal lift
  Matrix dxi_dz;     ///< (m*k) x base dim, rows ordered gamma + m*a
};

/// Routh reduction data for a Lagrangian with symmetry at a fixed momentum.
class RouthReduction {
 public:
  RouthReduction(LagrangianSystem sys, SymmetryModel sym, ConnectionOneForm conn, MomentumValue mu,
                 BundleChart chart, std::string label = {});

  const LagrangianSystem& system() const { return sys_; }
  const SymmetryModel& symmetry() const { return sym_; }
  const ConnectionOneForm& connection() const { return conn_; }
  const MomentumValue& mu() const { return mu_; }
  const BundleChart& chart() const { return chart_; }
  const std::string& label() const { return label_; }
  std::size_t base_n() const { return chart_.base.size(); }
  std::size_t k() const { return sys_.k(); }

  /// Horizontal lift of a base jet: coordinate lift minus its vertical part.
  KJet horizontal_lift(const KJet& base) const;

  /// Lift onto J_L^-1(mu) through solve_g_regularity.
  KJet level_set_lift(const KJet& base, Matrix* xi_out = nullptr) const;

  ReducedExpansion expand(const KJet& base) const;

  /// Fibre components of the level-set lift's velocities (fibre_n x k).
  Matrix fibre_velocities(const KJet& base) const;

  /// Exact derivatives of the fibre velocities with respect to the base jet
  /// coordinates: (fibre_n*k) x (base_n + base_n*k), rows r + fibre_n*a.
  Matrix fibre_velocity_jacobian(const KJet& base) const;

 private:
  friend class RouthSystem;
  // Dual evaluation of R at (base jet, xi) with xi ordered gamma + m*a.
  Dual2 lifted_routhian(std::span<const Dual2> w) const;
  std::vector<Dual2> lifted_velocities(std::span<const Dual2> w) const;
  void check_base(const KJet& base) const;

  LagrangianSystem sys_;
  SymmetryModel sym_;
  ConnectionOneForm conn_;
  MomentumValue mu_;
  BundleChart chart_;
  std::string label_;
};

/// Value of the reduced Routhian at a base jet.
double reduced_routhian(const RouthReduction& red, const KJet& base);

/// Magnetic two-form B_{mu_a} on the base: B_rs = d A_{mu_a}(hor e_r, hor e_s)
/// at the base point, with d A by central differences.
Matrix magnetic_term(const RouthReduction& red, std::size_t a, std::span<const double> base_q);

/// Quadratic reduced Routhian R = 1/2 v^T Q v + l.v + c in the base
/// velocities (no configuration dependence) with zero magnetic terms.
struct QuadraticRouthian {
  Matrix quadratic;            ///< nk x nk, velocities ordered i + n*a
  std::vector<double> linear;  ///< nk
  double constant = 0.0;
};

/// Reduced system: Routhian on the base k-velocity bundle and magnetic terms.
class RouthSystem {
 public:
  using Expander = std::function<Taylor2(const KJet&)>;
  using Magnetic = std::function<Matrix(std::span<const double>, std::size_t)>;

  RouthSystem(std::string label, std::size_t base_n, std::size_t k, MomentumValue mu,
              Expander routhian, Magnetic magnetic);

  static RouthSystem from_reduction(const RouthReduction& red);
  static RouthSystem from_quadratic(std::string label, std::size_t base_n, std::size_t k,
                                    MomentumValue mu, QuadraticRouthian coefficients);

  const std::string& label() const { return label_; }
  std::size_t base_n() const { return base_n_; }
  std::size_t k() const { return k_; }
  const MomentumValue& mu() const { return mu_; }
  const std::optional<QuadraticRouthian>& coefficients() const { return coefficients_; }

  Taylor2 expand(const KJet& base) const;
  double value(const KJet& base) const { return expand(base).value; }
  Matrix magnetic(std::span<const double> base_q, std::size_t a) const;

  /// Reads off quadratic coefficients at the given base point; `max_variation`
  /// receives the largest change of the velocity Hessian and configuration
  /// gradient across `probes` (zero for a truly quadratic, cyclic Routhian).
  QuadraticRouthian quadratic_coefficients(std::span<const double> base_q,
                                           std::span<const KJet> probes = {},
                                           double* max_variation = nullptr) const;

  /// JSON text {label, base_n, k, mu, coefficients?}.
  std::string to_json() const;
  static RouthSystem from_json(const std::string& text);

 private:
  std::string label_;
  std::size_t base_n_, k_;
  MomentumValue mu_;
  Expander expand_;
  Magnetic magnetic_;
  std::optional<QuadraticRouthian> coefficients_;
};

/// r_i = sum_a d/dt^a(dR/dv^i_a o psi1) - dR/dq^i o psi1 - sum_a (B_{mu_a})_ij d_a psi^j
/// at interior nodes of the reduced field.
NodalReport reduced_el_residual(const RouthSystem& rsys, const FieldSample& field,
                                DerivativeMode mode = DerivativeMode::Auto);

}  // namespace routhk
