#include "routhk/dual.hpp"

#include <algorithm>
#include <cmath>

namespace routhk {

Dual2 Dual2::variable(double value, std::size_t dir, std::size_t ndirs) {
  Dual2 d(value);
  d.first_.assign(ndirs, 0.0);
  d.second_.assign(ndirs * ndirs, 0.0);
  d.first_.at(dir) = 1.0;
  return d;
}

Dual2 Dual2::seeded(double value, std::span<const double> seed) {
  Dual2 d(value);
  d.first_.assign(seed.begin(), seed.end());
  d.second_.assign(seed.size() * seed.size(), 0.0);
  return d;
}

double Dual2::d2(std::size_t i, std::size_t j) const {
  const std::size_t n = first_.size();
  return (i < n && j < n) ? second_[i * n + j] : 0.0;
}

bool Dual2::is_finite() const {
  auto fin = [](double v) { return std::isfinite(v); };
  return std::isfinite(value_) && std::all_of(first_.begin(), first_.end(), fin) &&
         std::all_of(second_.begin(), second_.end(), fin);
}

void Dual2::widen(std::size_t n) {
  const std::size_t old = first_.size();
  if (n <= old) return;
  std::vector<double> h(n * n, 0.0);
  for (std::size_t i = 0; i < old; ++i)
    for (std::size_t j = 0; j < old; ++j) h[i * n + j] = second_[i * old + j];
  first_.resize(n, 0.0);
  second_ = std::move(h);
}

Dual2& Dual2::operator+=(const Dual2& o) {
  widen(o.directions());
  value_ += o.value_;
  const std::size_t n = o.directions(), N = directions();
  for (std::size_t i = 0; i < n; ++i) {
    first_[i] += o.first_[i];
    for (std::size_t j = 0; j < n; ++j) second_[i * N + j] += o.second_[i * n + j];
  }
  return *this;
}

Dual2& Dual2::operator-=(const Dual2& o) {
  widen(o.directions());
  value_ -= o.value_;
  const std::size_t n = o.directions(), N = directions();
  for (std::size_t i = 0; i < n; ++i) {
    first_[i] -= o.first_[i];
    for (std::size_t j = 0; j < n; ++j) second_[i * N + j] -= o.second_[i * n + j];
  }
  return *this;
}

Dual2 operator-(const Dual2& a) {
  Dual2 r = a;
  r.value_ = -r.value_;
  for (double& g : r.first_) g = -g;
  for (double& h : r.second_) h = -h;
  return r;
}

Dual2 operator*(const Dual2& a, const Dual2& b) {
  const std::size_t N = std::max(a.directions(), b.directions());
  if (N == 0) return Dual2(a.value_ * b.value_);
  Dual2 r(a.value_ * b.value_);
  r.first_.assign(N, 0.0);
  r.second_.assign(N * N, 0.0);
  for (std::size_t i = 0; i < N; ++i) {
    const double ai = a.d1(i), bi = b.d1(i);
    r.first_[i] = ai * b.value_ + a.value_ * bi;
    for (std::size_t j = 0; j < N; ++j) {
      r.second_[i * N + j] = a.d2(i, j) * b.value_ + a.value_ * b.d2(i, j) +
                             ai * b.d1(j) + a.d1(j) * bi;
    }
  }
  return r;
}

Dual2& Dual2::operator*=(const Dual2& o) { return *this = *this * o; }

Dual2 Dual2::apply(double f, double df, double d2f) const {
  Dual2 r(f);
  const std::size_t N = directions();
  r.first_.resize(N);
  r.second_.resize(N * N);
  for (std::size_t i = 0; i < N; ++i) {
    r.first_[i] = df * first_[i];
    for (std::size_t j = 0; j < N; ++j)
      r.second_[i * N + j] = df * second_[i * N + j] + d2f * first_[i] * first_[j];
  }
  return r;
}

Dual2 operator/(const Dual2& a, const Dual2& b) {
  const double v = b.value_;
  if (b.directions() == 0) return a * Dual2(1.0 / v);
  return a * b.apply(1.0 / v, -1.0 / (v * v), 2.0 / (v * v * v));
}

Dual2& Dual2::operator/=(const Dual2& o) { return *this = *this / o; }

Dual2 sin(const Dual2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.apply(s, c, -s);
}

Dual2 cos(const Dual2& x) {
  const double s = std::sin(x.value()), c = std::cos(x.value());
  return x.apply(c, -s, -c);
}

Dual2 sinh(const Dual2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return x.apply(s, c, s);
}

Dual2 cosh(const Dual2& x) {
  const double s = std::sinh(x.value()), c = std::cosh(x.value());
  return x.apply(c, s, c);
}

Dual2 exp(const Dual2& x) {
  const double e = std::exp(x.value());
  return x.apply(e, e, e);
}

Dual2 log(const Dual2& x) {
  const double v = x.value();
  return x.apply(std::log(v), 1.0 / v, -1.0 / (v * v));
}

Dual2 sqrt(const Dual2& x) {
  const double s = std::sqrt(x.value());
  return x.apply(s, 0.5 / s, -0.25 / (s * x.value()));
}

Dual2 pow(const Dual2& x, double p) {
  const double v = x.value();
  if (p == 0.0) return Dual2(1.0);
  if (p == 1.0) return x;
  if (p == 2.0) return x * x;
  return x.apply(std::pow(v, p), p * std::pow(v, p - 1.0),
                 p * (p - 1.0) * std::pow(v, p - 2.0));
}

Dual2 pow(const Dual2& x, const Dual2& p) {
  if (p.directions() == 0) return pow(x, p.value());
  return exp(p * log(x));
}

Dual2 sq(const Dual2& x) { return x * x; }

std::vector<Dual2> make_variables(std::span<const double> x) {
  std::vector<Dual2> out;
  out.reserve(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out.push_back(Dual2::variable(x[i], i, x.size()));
  return out;
}

std::vector<Dual2> make_constants(std::span<const double> x) {
  return std::vector<Dual2>(x.begin(), x.end());
}

}  // namespace routhk
