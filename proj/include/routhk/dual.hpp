#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace routhk {

/// Second-order forward-mode dual number.
///
/// Carries a value, its first derivatives along N active directions and the
/// full symmetric N x N block of second derivatives. A Dual2 built from a
/// plain double has N = 0 and behaves as a constant; binary operations on
/// operands with different N treat the missing directions as zero.
class Dual2 {
 public:
  Dual2() = default;
  Dual2(double value) : value_(value) {}  // NOLINT: implicit constants are the point

  /// Independent variable: first derivative e_dir in an N-direction space.
  static Dual2 variable(double value, std::size_t dir, std::size_t ndirs);

  /// Variable moving along an arbitrary seed: d/ds (x + s*seed).
  static Dual2 seeded(double value, std::span<const double> seed);

  double value() const { return value_; }
  std::size_t directions() const { return first_.size(); }

  double d1(std::size_t i) const { return i < first_.size() ? first_[i] : 0.0; }
  double d2(std::size_t i, std::size_t j) const;

  const std::vector<double>& gradient() const { return first_; }
  /// Row-major N x N.
  const std::vector<double>& hessian() const { return second_; }

  bool is_finite() const;

  Dual2& operator+=(const Dual2& o);
  Dual2& operator-=(const Dual2& o);
  Dual2& operator*=(const Dual2& o);
  Dual2& operator/=(const Dual2& o);

  friend Dual2 operator-(const Dual2& a);
  friend Dual2 operator+(Dual2 a, const Dual2& b) { return a += b; }
  friend Dual2 operator-(Dual2 a, const Dual2& b) { return a -= b; }
  friend Dual2 operator*(const Dual2& a, const Dual2& b);
  friend Dual2 operator/(const Dual2& a, const Dual2& b);

  /// Chain rule for a scalar function with known f(x), f'(x), f''(x).
  Dual2 apply(double f, double df, double d2f) const;

 private:
  void widen(std::size_t n);

  double value_ = 0.0;
  std::vector<double> first_;
  std::vector<double> second_;
};

Dual2 sin(const Dual2& x);
Dual2 cos(const Dual2& x);
Dual2 sinh(const Dual2& x);
Dual2 cosh(const Dual2& x);
Dual2 exp(const Dual2& x);
Dual2 log(const Dual2& x);
Dual2 sqrt(const Dual2& x);
Dual2 pow(const Dual2& x, double p);
Dual2 pow(const Dual2& x, const Dual2& p);
Dual2 sq(const Dual2& x);

/// Seeds a point x as N = x.size() independent variables.
std::vector<Dual2> make_variables(std::span<const double> x);

/// Lifts plain doubles to constant duals.
std::vector<Dual2> make_constants(std::span<const double> x);

}  // namespace routhk
