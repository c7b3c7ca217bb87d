#include "routhk/symmetry_model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "routhk/differentiate.hpp"
#include "routhk/errors.hpp"

namespace routhk {

void StructureConstants::set(std::size_t gamma, std::size_t alpha, std::size_t beta,
                             double value) {
  if (gamma >= m_ || alpha >= m_ || beta >= m_) throw IndexError("structure index out of range");
  c_[(gamma * m_ + alpha) * m_ + beta] = value;
  c_[(gamma * m_ + beta) * m_ + alpha] = -value;
}

double StructureConstants::antisymmetry_residual() const {
  double r = 0.0;
  for (std::size_t g = 0; g < m_; ++g)
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b)
        r = std::max(r, std::abs((*this)(g, a, b) + (*this)(g, b, a)));
  return r;
}

double StructureConstants::jacobi_residual() const {
  // [[e_a, e_b], e_c] + cyclic = 0, componentwise.
  double r = 0.0;
  for (std::size_t a = 0; a < m_; ++a)
    for (std::size_t b = 0; b < m_; ++b)
      for (std::size_t c = 0; c < m_; ++c)
        for (std::size_t e = 0; e < m_; ++e) {
          double s = 0.0;
          for (std::size_t d = 0; d < m_; ++d)
            s += (*this)(d, a, b) * (*this)(e, d, c) + (*this)(d, b, c) * (*this)(e, d, a) +
                 (*this)(d, c, a) * (*this)(e, d, b);
          r = std::max(r, std::abs(s));
        }
  return r;
}

std::vector<double> StructureConstants::bracket(std::span<const double> xi,
                                                std::span<const double> eta) const {
  if (xi.size() != m_ || eta.size() != m_) throw IndexError("algebra element has wrong length");
  std::vector<double> out(m_, 0.0);
  for (std::size_t g = 0; g < m_; ++g)
    for (std::size_t a = 0; a < m_; ++a)
      for (std::size_t b = 0; b < m_; ++b) out[g] += (*this)(g, a, b) * xi[a] * eta[b];
  return out;
}

namespace {

Matrix eval_matrix(const ConfigurationMatrixFunction& f, std::size_t rows, std::size_t cols,
                   std::span<const double> q, const char* what) {
  const auto out = f(make_constants(q));
  if (out.size() != rows * cols) {
    std::ostringstream msg;
    msg << what << " returned " << out.size() << " values, expected " << rows * cols;
    throw IndexError(msg.str());
  }
  Matrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) {
      const Dual2& d = out[r * cols + c];
      require_finite(d, q, what);
      m(r, c) = d.value();
    }
  return m;
}

}  // namespace

SymmetryModel::SymmetryModel(std::size_t n, StructureConstants structure,
                             ConfigurationMatrixFunction generators,
                             std::vector<std::string> labels)
    : n_(n), c_(std::move(structure)), gen_(std::move(generators)), labels_(std::move(labels)) {
  if (labels_.empty())
    for (std::size_t b = 0; b < m(); ++b) labels_.push_back("e" + std::to_string(b + 1));
  if (labels_.size() != m()) throw InvalidParameters("one label per algebra basis element");
}

Matrix SymmetryModel::generators(std::span<const double> q) const {
  if (q.size() != n_) throw IndexError("configuration point has wrong length");
  return eval_matrix(gen_, m(), n_, q, "generator");
}

std::vector<Matrix> SymmetryModel::generator_jacobians(std::span<const double> q) const {
  if (q.size() != n_) throw IndexError("configuration point has wrong length");
  const auto out = gen_(make_variables(q));
  if (out.size() != m() * n_) throw IndexError("generator returned the wrong number of values");
  std::vector<Matrix> jac(m(), Matrix(n_, n_));
  for (std::size_t b = 0; b < m(); ++b)
    for (std::size_t j = 0; j < n_; ++j) {
      require_finite(out[b * n_ + j], q, "generator");
      for (std::size_t i = 0; i < n_; ++i) jac[b](j, i) = out[b * n_ + j].d1(i);
    }
  return jac;
}

double SymmetryModel::bracket_closure_residual(std::span<const double> q) const {
  const Matrix lam = generators(q);
  const auto jac = generator_jacobians(q);
  const std::size_t mm = m();
  double r = 0.0;
  for (std::size_t a = 0; a < mm; ++a)
    for (std::size_t b = 0; b < mm; ++b)
      for (std::size_t j = 0; j < n_; ++j) {
        double br = 0.0;
        for (std::size_t i = 0; i < n_; ++i)
          br += lam(a, i) * jac[b](j, i) - lam(b, i) * jac[a](j, i);
        double expect = 0.0;
        for (std::size_t g = 0; g < mm; ++g) expect -= c_(g, a, b) * lam(g, j);
        r = std::max(r, std::abs(br - expect));
      }
  return r;
}

ConnectionOneForm::ConnectionOneForm(std::size_t m, std::size_t n,
                                     ConfigurationMatrixFunction components)
    : m_(m), n_(n), a_(std::move(components)) {}

ConnectionOneForm ConnectionOneForm::constant(const Matrix& a) {
  return ConnectionOneForm(a.rows(), a.cols(), [a](std::span<const Dual2>) {
    std::vector<Dual2> out(a.data().begin(), a.data().end());
    return out;
  });
}

Matrix ConnectionOneForm::at(std::span<const double> q) const {
  if (q.size() != n_) throw IndexError("configuration point has wrong length");
  return eval_matrix(a_, m_, n_, q, "connection");
}

std::vector<double> ConnectionOneForm::apply(std::span<const double> q,
                                             std::span<const double> v) const {
  return at(q) * v;
}

std::vector<double> ConnectionOneForm::contract(std::span<const double> q,
                                                std::span<const double> nu) const {
  if (nu.size() != m_) throw IndexError("algebra covector has wrong length");
  const Matrix a = at(q);
  std::vector<double> out(n_, 0.0);
  for (std::size_t al = 0; al < m_; ++al)
    for (std::size_t i = 0; i < n_; ++i) out[i] += nu[al] * a(al, i);
  return out;
}

Matrix ConnectionOneForm::exterior_derivative(std::span<const double> q,
                                       std::span<const double> nu) const {
  // D(i, j) = d_i A_nu,j by central differences.
  Matrix d(n_, n_);
  std::vector<double> qp(q.begin(), q.end());
  for (std::size_t i = 0; i < n_; ++i) {
    qp[i] = q[i] + kFdStep;
    const auto ap = contract(qp, nu);
    qp[i] = q[i] - kFdStep;
    const auto am = contract(qp, nu);
    qp[i] = q[i];
    for (std::size_t j = 0; j < n_; ++j) d(i, j) = (ap[j] - am[j]) / (2 * kFdStep);
  }
  return d - d.transpose();
}

double ConnectionOneForm::axiom_residual(const SymmetryModel& sym,
                                         std::span<const double> q) const {
  if (sym.m() != m_ || sym.n() != n_) throw IndexError("connection and symmetry shapes differ");
  const Matrix prod = at(q) * sym.generators(q).transpose();
  return (prod - Matrix::identity(m_)).max_abs();
}

}  // namespace routhk
