#include "routhk/jets.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "routhk/errors.hpp"
#include "routhk/io.hpp"

namespace routhk {

namespace {

void require_all_finite(std::span<const double> xs, const char* what) {
  for (std::size_t i = 0; i < xs.size(); ++i) {
    if (!std::isfinite(xs[i])) {
      std::ostringstream msg;
      msg << what << ": non-finite entry at index " << i;
      throw NumericalFailure(msg.str());
    }
  }
}

}  // namespace

KJet::KJet(std::vector<double> q_, std::vector<double> v_, std::size_t k_)
    : n(q_.size()), k(k_), q(std::move(q_)), v(std::move(v_)) {
  validate();
}

std::vector<double> KJet::coordinates() const {
  std::vector<double> z(q);
  z.insert(z.end(), v.begin(), v.end());
  return z;
}

KJet KJet::from_coordinates(std::size_t n, std::size_t k, std::span<const double> z) {
  if (z.size() != n + n * k) throw IndexError("jet coordinate vector has wrong length");
  KJet j(n, k);
  std::copy(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n), j.q.begin());
  std::copy(z.begin() + static_cast<std::ptrdiff_t>(n), z.end(), j.v.begin());
  return j;
}

void KJet::validate() const {
  if (q.size() != n || v.size() != n * k) throw IndexError("jet shape does not match (n, k)");
  require_all_finite(q, "jet q");
  require_all_finite(v, "jet v");
}

KCojet::KCojet(std::vector<double> q_, std::vector<double> p_, std::size_t k_)
    : n(q_.size()), k(k_), q(std::move(q_)), p(std::move(p_)) {
  validate();
}

std::vector<double> KCojet::coordinates() const {
  std::vector<double> z(q);
  z.insert(z.end(), p.begin(), p.end());
  return z;
}

KCojet KCojet::from_coordinates(std::size_t n, std::size_t k, std::span<const double> z) {
  if (z.size() != n + n * k) throw IndexError("cojet coordinate vector has wrong length");
  KCojet c(n, k);
  std::copy(z.begin(), z.begin() + static_cast<std::ptrdiff_t>(n), c.q.begin());
  std::copy(z.begin() + static_cast<std::ptrdiff_t>(n), z.end(), c.p.begin());
  return c;
}

void KCojet::validate() const {
  if (q.size() != n || p.size() != n * k) throw IndexError("cojet shape does not match (n, k)");
  require_all_finite(q, "cojet q");
  require_all_finite(p, "cojet p");
}

double pairing(const KCojet& alpha, const KJet& v) {
  if (alpha.n != v.n || alpha.k != v.k) throw IndexError("pairing of mismatched shapes");
  for (std::size_t i = 0; i < v.n; ++i) {
    if (std::abs(alpha.q[i] - v.q[i]) > kBasePointTol) {
      std::ostringstream msg;
      msg << "base points differ in coordinate " << i << ": " << alpha.q[i] << " vs " << v.q[i];
      throw BasePointMismatch(msg.str());
    }
  }
  double s = 0.0;
  for (std::size_t j = 0; j < v.v.size(); ++j) s += alpha.p[j] * v.v[j];
  return s;
}

AnalyticField::Jet2 AnalyticField::jet2(std::span<const double> t) const {
  if (t.size() != k) throw IndexError("field parameter has wrong dimension");
  const auto out = eval(make_variables(t));
  if (out.size() != n) throw IndexError("analytic field returned wrong number of components");
  Jet2 j;
  j.value.resize(n);
  j.first = Matrix(n, k);
  j.second.assign(n, Matrix(k, k));
  for (std::size_t i = 0; i < n; ++i) {
    if (!out[i].is_finite()) {
      std::ostringstream msg;
      msg << "analytic field component " << i << " is not finite at t = (";
      for (std::size_t a = 0; a < k; ++a) msg << (a ? ", " : "") << t[a];
      msg << ")";
      throw NumericalFailure(msg.str());
    }
    j.value[i] = out[i].value();
    for (std::size_t a = 0; a < k; ++a) {
      j.first(i, a) = out[i].d1(a);
      for (std::size_t b = 0; b < k; ++b) j.second[i](a, b) = out[i].d2(a, b);
    }
  }
  return j;
}

std::vector<double> AnalyticField::value(std::span<const double> t) const {
  if (t.size() != k) throw IndexError("field parameter has wrong dimension");
  const auto out = eval(make_constants(t));
  if (out.size() != n) throw IndexError("analytic field returned wrong number of components");
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = out[i].value();
  return v;
}

FieldSample::FieldSample(Grid grid, std::size_t n, std::vector<double> values,
                         std::optional<AnalyticField> exact)
    : grid_(std::move(grid)), n_(n), values_(std::move(values)), exact_(std::move(exact)) {
  if (values_.size() != grid_.size() * n_) throw IndexError("field sample has wrong length");
  require_all_finite(values_, "field sample");
  if (exact_) {
    if (exact_->n != n_ || exact_->k != grid_.dim())
      throw IndexError("analytic field shape does not match the sample");
    for (std::size_t f = 0; f < grid_.size(); ++f) {
      const auto v = exact_->value(grid_.point(f));
      for (std::size_t i = 0; i < n_; ++i) {
        if (std::abs(v[i] - values_[f * n_ + i]) > 1e-12 * std::max(1.0, std::abs(v[i])))
          throw NumericalFailure("analytic field disagrees with its samples");
      }
    }
  }
}

FieldSample FieldSample::sample(const Grid& grid, AnalyticField exact) {
  std::vector<double> values(grid.size() * exact.n);
  parallel_for(grid.size(), [&](std::size_t f) {
    const auto v = exact.value(grid.point(f));
    std::copy(v.begin(), v.end(), values.begin() + static_cast<std::ptrdiff_t>(f * exact.n));
  });
  const std::size_t n = exact.n;
  return FieldSample(grid, n, std::move(values), std::move(exact));
}

double fd_partial(const FieldSample& field, std::size_t component, std::size_t axis,
                  const MultiIndex& node) {
  if (component >= field.n()) throw IndexError("field component out of range");
  return stencil_partial(field.grid(), field.values(), field.n(), component, axis, node);
}

KJet prolong(const FieldSample& field, const MultiIndex& node) {
  const Grid& g = field.grid();
  if (!g.contains(node)) throw IndexError("node outside grid");
  const std::size_t n = field.n(), k = field.k();
  KJet jet(n, k);
  if (field.has_exact()) {
    const auto j = field.exact()->jet2(g.point(node));
    jet.q = j.value;
    for (std::size_t a = 0; a < k; ++a)
      for (std::size_t i = 0; i < n; ++i) jet.vel(i, a) = j.first(i, a);
    return jet;
  }
  const auto vals = field.at(g.flatten(node));
  jet.q.assign(vals.begin(), vals.end());
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < n; ++i) jet.vel(i, a) = fd_partial(field, i, a, node);
  return jet;
}

std::vector<Matrix> second_derivatives(const FieldSample& field, const MultiIndex& node) {
  if (!field.has_exact()) throw NumericalFailure("second derivatives need an analytic field");
  return field.exact()->jet2(field.grid().point(node)).second;
}

void write_csv(std::ostream& os, const FieldSample& field) {
  const std::size_t k = field.k(), n = field.n();
  for (std::size_t a = 0; a < k; ++a) os << (a ? "," : "") << "t" << (a + 1);
  for (std::size_t i = 0; i < n; ++i) os << ",phi" << (i + 1);
  os << "\n";
  for (std::size_t f = 0; f < field.grid().size(); ++f) {
    const auto t = field.grid().point(f);
    for (std::size_t a = 0; a < k; ++a) os << (a ? "," : "") << format_shortest(t[a]);
    for (double v : field.at(f)) os << "," << format_shortest(v);
    os << "\n";
  }
  if (!os) throw Error("failed writing field CSV");
}

FieldSample read_field_csv(std::istream& is, const Grid& grid) {
  std::string line;
  if (!std::getline(is, line)) throw ParseError("empty field CSV");
  std::size_t cols = 1;
  for (char c : line) cols += (c == ',');
  if (cols <= grid.dim()) throw ParseError("field CSV has no value columns");
  const std::size_t n = cols - grid.dim();
  std::vector<double> values;
  values.reserve(grid.size() * n);
  std::size_t row = 0;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string cell;
    std::size_t c = 0;
    while (std::getline(ls, cell, ',')) {
      double x = 0.0;
      try {
        x = std::stod(cell);
      } catch (const std::exception&) {
        throw ParseError("bad number '" + cell + "' in field CSV row " + std::to_string(row + 1));
      }
      if (c >= grid.dim()) values.push_back(x);
      ++c;
    }
    if (c != cols) throw ParseError("field CSV row " + std::to_string(row + 1) + " has wrong width");
    ++row;
  }
  if (row != grid.size()) throw ParseError("field CSV row count does not match the grid");
  return FieldSample(grid, n, std::move(values));
}

}  // namespace routhk

namespace routhk {

Prolongation2 prolong2(const FieldSample& field, const MultiIndex& node) {
  if (!field.has_exact()) throw NumericalFailure("exact prolongation needs an analytic field");
  const Grid& g = field.grid();
  if (!g.contains(node)) throw IndexError("node outside grid");
  const std::size_t n = field.n(), k = field.k();
  const auto j = field.exact()->jet2(g.point(node));
  Prolongation2 p{KJet(n, k), Matrix(k, n + n * k)};
  p.jet.q = j.value;
  for (std::size_t a = 0; a < k; ++a)
    for (std::size_t i = 0; i < n; ++i) {
      p.jet.vel(i, a) = j.first(i, a);
      p.dz(a, i) = j.first(i, a);
      for (std::size_t b = 0; b < k; ++b) p.dz(a, n + i + n * b) = j.second[i](a, b);
    }
  return p;
}

bool use_exact(DerivativeMode mode, const FieldSample& field) {
  switch (mode) {
    case DerivativeMode::Exact:
      if (!field.has_exact()) throw NumericalFailure("exact derivatives need an analytic field");
      return true;
    case DerivativeMode::Stencil:
      return false;
    case DerivativeMode::Auto:
      break;
  }
  return field.has_exact();
}

std::vector<std::size_t> residual_nodes(const Grid& grid, bool exact) {
  auto nodes = grid.interior_nodes(exact ? 1 : 2);
  if (nodes.empty())
    throw GridError(exact ? "grid has no interior nodes" : "stencil residuals need at least 5 nodes per axis");
  return nodes;
}

}  // namespace routhk
