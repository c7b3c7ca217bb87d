#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "routhk/dual.hpp"
#include "routhk/linalg.hpp"

namespace routhk {

/// m x k matrix of momentum values mu_{beta, a}: column a is mu_a in g*.
using MomentumValue = Matrix;

/// Function of the configuration point returning rows x cols dual values in
/// row-major order.
using ConfigurationMatrixFunction = std::function<std::vector<Dual2>(std::span<const Dual2>)>;

/// Structure constants c^gamma_{alpha beta} of an m-dimensional Lie algebra.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t m) : m_(m), c_(m * m * m, 0.0) {}

  std::size_t dim() const { return m_; }
  double operator()(std::size_t gamma, std::size_t alpha, std::size_t beta) const {
    return c_[(gamma * m_ + alpha) * m_ + beta];
  }
  /// Sets c^gamma_{alpha beta} and its antisymmetric partner.
  void set(std::size_t gamma, std::size_t alpha, std::size_t beta, double value);

  /// Largest violation of antisymmetry.
  double antisymmetry_residual() const;
  /// Largest violation of the Jacobi identity.
  double jacobi_residual() const;
  /// (ad_xi eta)^gamma = c^gamma_{alpha beta} xi^alpha eta^beta.
  std::vector<double> bracket(std::span<const double> xi, std::span<const double> eta) const;

 private:
  std::size_t m_ = 0;
  std::vector<double> c_;
};

/// Lie algebra acting on an n-dimensional configuration space through m
/// generator fields (xi_beta)_Q = Lambda^j_beta d/dq^j.
class SymmetryModel {
 public:
  /// `generators` returns m x n values Lambda^j_beta at index beta*n + j.
  SymmetryModel(std::size_t n, StructureConstants structure, ConfigurationMatrixFunction generators,
                std::vector<std::string> labels = {});

  std::size_t n() const { return n_; }
  std::size_t m() const { return c_.dim(); }
  const StructureConstants& structure() const { return c_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const ConfigurationMatrixFunction& generator_function() const { return gen_; }

  /// m x n matrix Lambda(q).
  Matrix generators(std::span<const double> q) const;
  /// Jacobian d Lambda^j_beta / dq^i as m matrices of size n x n (row j, column i).
  std::vector<Matrix> generator_jacobians(std::span<const double> q) const;

  /// Largest gap between the coordinate bracket of generator fields and
  /// -c^gamma_{alpha beta} (xi_gamma)_Q at q.
  double bracket_closure_residual(std::span<const double> q) const;

 private:
  std::size_t n_;
  StructureConstants c_;
  ConfigurationMatrixFunction gen_;
  std::vector<std::string> labels_;
};

/// Principal connection one-form with components A^alpha_i(q).
class ConnectionOneForm {
 public:
  /// `components` returns m x n values A^alpha_i at index alpha*n + i.
  ConnectionOneForm(std::size_t m, std::size_t n, ConfigurationMatrixFunction components);

  /// Constant components.
  static ConnectionOneForm constant(const Matrix& a);

  std::size_t m() const { return m_; }
  std::size_t n() const { return n_; }
  const ConfigurationMatrixFunction& function() const { return a_; }

  Matrix at(std::span<const double> q) const;
  /// A(v) in the algebra.
  std::vector<double> apply(std::span<const double> q, std::span<const double> v) const;
  /// The one-form A_nu = <nu, A> on Q.
  std::vector<double> contract(std::span<const double> q, std::span<const double> nu) const;
  /// Coordinate matrix of d A_nu by central differences (step kFdStep):
  /// entry (i, j) = d_i A_nu,j - d_j A_nu,i.
  Matrix exterior_derivative(std::span<const double> q, std::span<const double> nu) const;

  /// Largest gap of A((xi_beta)_Q) = e_beta at q.
  double axiom_residual(const SymmetryModel& sym, std::span<const double> q) const;

 private:
  std::size_t m_, n_;
  ConfigurationMatrixFunction a_;
};

}  // namespace routhk
