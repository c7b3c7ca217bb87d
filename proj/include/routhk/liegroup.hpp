#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "routhk/differentiate.hpp"
#include "routhk/linalg.hpp"
#include "routhk/symmetry_model.hpp"

namespace routhk {

/// Lie algebra given by structure constants in a fixed basis.
struct LieAlgebraModel {
  StructureConstants structure;
  std::vector<std::string> labels;

  std::size_t dim() const { return structure.dim(); }

  /// JSON {m, structure: [[alpha, beta, gamma, value], ...], labels}, with
  /// 0-based indices meaning [e_alpha, e_beta] = value e_gamma. Throws
  /// ParseError on malformed input and InvalidParameters when Jacobi fails.
  static LieAlgebraModel from_json(const std::string& text);
  std::string to_json() const;
};

/// (ad_xi eta)^gamma = c^gamma_{alpha beta} xi^alpha eta^beta.
std::vector<double> bracket(const LieAlgebraModel& alg, std::span<const double> xi,
                            std::span<const double> eta);

/// M_{alpha beta} = nu_gamma c^gamma_{alpha beta}.
Matrix coadjoint_matrix(const LieAlgebraModel& alg, std::span<const double> nu);

/// Orthonormal basis (columns) of the isotropy algebra of nu.
Matrix isotropy_algebra(const LieAlgebraModel& alg, std::span<const double> nu,
                        double tol = 1e-10);

/// Metric g_ij(q) on Q, evaluable on duals; n x n values row-major.
using MetricFunction = ConfigurationMatrixFunction;

/// Invariant metric together with the symmetry acting by isometries.
struct InvariantMetricModel {
  LieAlgebraModel algebra;
  SymmetryModel symmetry;
  MetricFunction metric;

  std::size_t n() const { return symmetry.n(); }
  Matrix metric_at(std::span<const double> q) const;
};

/// Gram matrix I_q of the generators under the metric. Throws SingularMatrix
/// if the action is not locally free at q.
Matrix locked_inertia(const InvariantMetricModel& met, std::span<const double> q);

/// A(v) = I_q^-1 (G(v, E_beta))_beta.
std::vector<double> mechanical_connection(const InvariantMetricModel& met,
                                          std::span<const double> q, std::span<const double> v);

/// Mechanical connection as a connection one-form (dual-capable).
ConnectionOneForm mechanical_connection_form(const InvariantMetricModel& met);

/// Killing operator of a generator field on the metric at q, by central
/// differences with step kFdStep:
/// K_ki = Lambda^j d_j g_ki + g_ji d_k Lambda^j + g_kj d_i Lambda^j.
Matrix killing_residual(const MetricFunction& metric, const ConfigurationMatrixFunction& generator,
                        std::span<const double> q);

/// Christoffel symbols Gamma^i_jk (index i*n*n + j*n + k) from exact metric
/// derivatives.
std::vector<double> christoffel(const MetricFunction& metric, std::span<const double> q);

/// Routhian l(tau(nu)) - sum_a <nu_a, tau(nu)_a> with tau the inverse of the
/// fibre derivative of l, found by Newton iteration from zero. `ell` acts on
/// xi in g^k ordered alpha + m*a; nu is m x k. Throws NewtonDivergence.
double orbit_routhian(const LieAlgebraModel& alg, const ScalarFunction& ell, const Matrix& nu);

/// Largest violation of ad-invariance <[x, y], z> + <y, [x, z]> = 0 of a
/// bilinear form on the algebra.
double ad_invariance_residual(const LieAlgebraModel& alg, const Matrix& form);

namespace a410 {

/// Basis e_x, e_y, e_z, e_theta with [e_x,e_y] = -2e_z, [e_x,e_theta] = e_y,
/// [e_y,e_theta] = -e_x.
LieAlgebraModel algebra();

/// Q = R x G with coordinates (q, x, y, z, theta) and generators E_x, E_y,
/// E_z, E_theta.
SymmetryModel symmetry();

/// Metric dq^2 + gamma dq dtheta + dx^2 + dy^2 - y dx dtheta + x dy dtheta + dz dtheta.
MetricFunction metric(double gamma);

InvariantMetricModel model(double gamma);

/// Matrix F_ab = G(E_a, E_b).
Matrix inertia();

/// 4 x 4 group element for coordinates (x, y, z, theta).
Matrix group_element(double x, double y, double z, double theta);

/// Algebra basis as 4 x 4 matrices, obtained by differentiating
/// group_element at the identity.
std::vector<Matrix> basis_matrices();

/// Ad*_g mu defined by <Ad*_g mu, xi> = <mu, g xi g^-1>.
std::vector<double> coadjoint(const Matrix& g, std::span<const double> mu);

}  // namespace a410

}  // namespace routhk
