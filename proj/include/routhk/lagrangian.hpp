#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "routhk/differentiate.hpp"
#include "routhk/jets.hpp"
#include "routhk/linalg.hpp"
#include "routhk/report.hpp"

namespace routhk {

/// Lagrangian written against separate configuration and velocity arguments;
/// v uses the jet layout v[i + n*a].
using JetFunction =
    std::function<Dual2(std::span<const Dual2> q, std::span<const Dual2> v)>;

/// First-order field Lagrangian L on the k-velocity bundle of an n-dimensional
/// configuration space.
class LagrangianSystem {
 public:
  LagrangianSystem(std::size_t n, std::size_t k, JetFunction l, std::string label = {});

  std::size_t n() const { return n_; }
  std::size_t k() const { return k_; }
  std::size_t dim() const { return n_ + n_ * k_; }
  const std::string& label() const { return label_; }

  /// L as a function of the stacked coordinates z = (q, v).
  const ScalarFunction& function() const { return fz_; }

  double value(const KJet& jet) const;
  /// Value, gradient and Hessian in all of (q, v).
  Taylor2 expand(const KJet& jet) const;

  /// Index of v^i_a inside z.
  std::size_t vindex(std::size_t i, std::size_t a) const { return n_ + i + n_ * a; }

 private:
  void check(const KJet& jet) const;

  std::size_t n_, k_;
  std::string label_;
  ScalarFunction fz_;
};

/// p_i^a = dL/dv^i_a at the same base point.
KCojet legendre(const LagrangianSystem& sys, const KJet& jet);

/// Largest relative gap between legendre and a central difference of L with
/// step kFdStep, relative to max(1, |p|).
double legendre_fd_gap(const LagrangianSystem& sys, const KJet& jet);

/// Largest relative gap between the exact Hessian in (q, v) and central
/// differences of the exact gradient, relative to max(1, max |H|).
double hessian_fd_gap(const LagrangianSystem& sys, const KJet& jet);

/// E_L = <FL(jet), jet> - L(jet).
double energy(const LagrangianSystem& sys, const KJet& jet);

/// Exact gradient of E_L in (q, v).
std::vector<double> energy_gradient(const LagrangianSystem& sys, const KJet& jet);

/// Velocity Hessian d^2L/dv^i_a dv^j_b, nk x nk with (i, a) flattened i fastest.
Matrix hessian(const LagrangianSystem& sys, const KJet& jet);

struct RegularityCertificate {
  bool regular = false;
  double min_pivot = 0.0;          ///< smallest |pivot| over all samples
  std::size_t worst_sample = 0;    ///< sample attaining min_pivot
};

/// Regular iff every sampled velocity Hessian has all pivots above tol.
RegularityCertificate is_regular(const LagrangianSystem& sys, std::span<const KJet> jets,
                                 double tol = 1e-10);

/// Euler-Lagrange residual r_i = sum_a d/dt^a (dL/dv^i_a o phi1) - dL/dq^i o phi1
/// at interior nodes. In exact mode the outer derivative comes from the chain
/// rule through the analytic field; in stencil mode from grid differences of
/// the nodal momenta.
NodalReport el_residual(const LagrangianSystem& sys, const FieldSample& field,
                        DerivativeMode mode = DerivativeMode::Auto);

/// Matrix W of omega^a_{Q,L} = dq^i ^ dP^a_i with P^a_i = dL/dv^i_a, so that
/// omega(X, Y) = X^T W Y in the basis (q, v).
Matrix lag_polysymplectic_form(const LagrangianSystem& sys, const KJet& jet, std::size_t a);

/// k tangent vectors at a jet; entry a has length n + nk in the (q, v) basis.
using KVectorFieldOnJets = std::function<std::vector<std::vector<double>>(const KJet&)>;

/// sum_a (Gamma_a contracted into omega^a_{Q,L}) - dE_L. The contraction of X
/// into omega is the covector W^T X.
std::vector<double> ksym_residual(const LagrangianSystem& sys, const KVectorFieldOnJets& gamma,
                                  const KJet& jet);

}  // namespace routhk
