#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <vector>

#include "routhk/dual.hpp"
#include "routhk/grid.hpp"
#include "routhk/linalg.hpp"

namespace routhk {

/// Point of the k-velocity bundle: q^i plus k velocity columns v^i_a.
///
/// Velocities are flattened with the configuration index fastest:
/// v^i_a lives at v[i + n*a]. The same (q, v) ordering is used for every
/// jet-space gradient and Hessian in the library.
struct KJet {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> q;
  std::vector<double> v;

  KJet() = default;
  KJet(std::size_t n_, std::size_t k_) : n(n_), k(k_), q(n_, 0.0), v(n_ * k_, 0.0) {}
  KJet(std::vector<double> q_, std::vector<double> v_, std::size_t k_);

  double vel(std::size_t i, std::size_t a) const { return v[i + n * a]; }
  double& vel(std::size_t i, std::size_t a) { return v[i + n * a]; }

  std::size_t dim() const { return n + n * k; }
  /// (q, v) concatenated.
  std::vector<double> coordinates() const;
  static KJet from_coordinates(std::size_t n, std::size_t k, std::span<const double> z);

  /// Throws NumericalFailure on non-finite entries, IndexError on bad shapes.
  void validate() const;
};

/// Point of the k-covelocity bundle: q^i plus k covectors p_i^a, stored at
/// p[i + n*a].
struct KCojet {
  std::size_t n = 0;
  std::size_t k = 0;
  std::vector<double> q;
  std::vector<double> p;

  KCojet() = default;
  KCojet(std::size_t n_, std::size_t k_) : n(n_), k(k_), q(n_, 0.0), p(n_ * k_, 0.0) {}
  KCojet(std::vector<double> q_, std::vector<double> p_, std::size_t k_);

  double mom(std::size_t i, std::size_t a) const { return p[i + n * a]; }
  double& mom(std::size_t i, std::size_t a) { return p[i + n * a]; }

  std::size_t dim() const { return n + n * k; }
  std::vector<double> coordinates() const;
  static KCojet from_coordinates(std::size_t n, std::size_t k, std::span<const double> z);
  void validate() const;
};

/// Tolerance for comparing base points of jets and cojets.
inline constexpr double kBasePointTol = 1e-12;

/// <alpha, v> = sum_a sum_i p_i^a v^i_a. Throws BasePointMismatch when the
/// base points differ by more than kBasePointTol.
double pairing(const KCojet& alpha, const KJet& v);

/// Map t -> phi(t) in R^n that can be evaluated on dual numbers, so that
/// exact first and second parameter derivatives are available.
struct AnalyticField {
  std::size_t n = 0;
  std::size_t k = 0;
  std::function<std::vector<Dual2>(std::span<const Dual2>)> eval;

  /// Value, first derivatives (n x k) and second derivatives of component i
  /// (k x k each) at t.
  struct Jet2 {
    std::vector<double> value;
    Matrix first;
    std::vector<Matrix> second;
  };
  Jet2 jet2(std::span<const double> t) const;
  std::vector<double> value(std::span<const double> t) const;
};

/// A field phi: R^k -> R^n sampled on a grid, optionally carrying the exact
/// analytic map it was sampled from.
class FieldSample {
 public:
  /// Throws NumericalFailure on non-finite values, IndexError on bad shape,
  /// and NumericalFailure when `exact` disagrees with `values` by > 1e-12.
  FieldSample(Grid grid, std::size_t n, std::vector<double> values,
              std::optional<AnalyticField> exact = std::nullopt);

  static FieldSample sample(const Grid& grid, AnalyticField exact);

  const Grid& grid() const { return grid_; }
  std::size_t n() const { return n_; }
  std::size_t k() const { return grid_.dim(); }
  const std::vector<double>& values() const { return values_; }
  std::span<const double> at(std::size_t flat) const { return {values_.data() + flat * n_, n_}; }
  const std::optional<AnalyticField>& exact() const { return exact_; }
  bool has_exact() const { return exact_.has_value(); }

  /// The same samples without the analytic evaluator.
  FieldSample without_exact() const { return FieldSample(grid_, n_, values_); }

 private:
  Grid grid_;
  std::size_t n_;
  std::vector<double> values_;
  std::optional<AnalyticField> exact_;
};

/// Grid-stencil partial derivative of one component of a field.
double fd_partial(const FieldSample& field, std::size_t component, std::size_t axis,
                  const MultiIndex& node);

/// First prolongation (phi(t), d phi/dt^a) at a node, exact when the field
/// carries an analytic evaluator and by grid stencils otherwise.
KJet prolong(const FieldSample& field, const MultiIndex& node);

/// Second parameter derivatives d^2 phi^i / dt^a dt^b at a node, for fields
/// with an analytic evaluator. Returns one k x k matrix per component.
std::vector<Matrix> second_derivatives(const FieldSample& field, const MultiIndex& node);

/// CSV with header t1,...,tk,phi1,...,phin, one row per node in flat order.
void write_csv(std::ostream& os, const FieldSample& field);

/// Parses the CSV written by write_csv back onto the given grid.
FieldSample read_field_csv(std::istream& is, const Grid& grid);

}  // namespace routhk

namespace routhk {

/// First prolongation together with its parameter derivatives: row a of dz
/// holds d/dt^a of the jet coordinates (q, v), i.e. (d_a phi, d_a d_b phi).
struct Prolongation2 {
  KJet jet;
  Matrix dz;
};

/// Requires an analytic field.
Prolongation2 prolong2(const FieldSample& field, const MultiIndex& node);

/// How outer parameter derivatives are taken in residual computations.
/// Auto uses the analytic evaluator when the field carries one.
enum class DerivativeMode { Auto, Exact, Stencil };

/// Nodes where residuals are reported: the interior in exact mode, and nodes
/// at least two steps from the boundary in stencil mode, so that outer
/// differences never combine one-sided boundary jets. Throws GridError when
/// the set is empty.
std::vector<std::size_t> residual_nodes(const Grid& grid, bool exact);

/// Resolves Auto against a concrete field; throws NumericalFailure when Exact
/// is requested for a field without an analytic evaluator.
bool use_exact(DerivativeMode mode, const FieldSample& field);

}  // namespace routhk
