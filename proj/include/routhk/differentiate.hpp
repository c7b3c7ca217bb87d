#pragma once

#include <functional>
#include <span>
#include <vector>

#include "routhk/dual.hpp"
#include "routhk/linalg.hpp"

namespace routhk {

/// Scalar function on R^N that can be evaluated on dual numbers.
using ScalarFunction = std::function<Dual2(std::span<const Dual2>)>;

/// Plain double evaluation, used by finite-difference cross-checks.
using RealFunction = std::function<double(std::span<const double>)>;

/// Central difference step shared by all finite-difference cross-checks.
inline constexpr double kFdStep = 1e-5;

struct DirectionalDerivatives {
  double value = 0.0;
  std::vector<double> first;  ///< d f(x + s d_i)/ds at s = 0
  Matrix second;              ///< mixed second derivatives along (d_i, d_j)
};

/// Exact first and second derivatives of f at x along the given directions.
/// Throws NumericalFailure (naming x) when anything is non-finite.
DirectionalDerivatives directional_derivs(const ScalarFunction& f, std::span<const double> x,
                                          std::span<const std::vector<double>> dirs);

/// Value, gradient and Hessian with respect to every coordinate.
struct Taylor2 {
  double value = 0.0;
  std::vector<double> gradient;
  Matrix hessian;
};

Taylor2 expand(const ScalarFunction& f, std::span<const double> x);

/// Evaluates f on constants only.
double evaluate(const ScalarFunction& f, std::span<const double> x);

/// Wraps a dual-capable function as a double function.
RealFunction as_real(ScalarFunction f);

/// Central-difference gradient with step h.
std::vector<double> fd_gradient(const RealFunction& f, std::span<const double> x,
                                double h = kFdStep);

/// Throws NumericalFailure if any entry of d is non-finite.
void require_finite(const Dual2& d, std::span<const double> at, const char* what);

}  // namespace routhk
