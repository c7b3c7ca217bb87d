#include "routhk/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "routhk/errors.hpp"

namespace routhk {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
  const std::size_t r = rows.size();
  const std::size_t c = r ? rows.begin()->size() : 0;
  Matrix m(r, c);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != c) throw IndexError("ragged matrix literal");
    std::size_t j = 0;
    for (double v : row) m(i, j++) = v;
    ++i;
  }
  return m;
}

Matrix Matrix::transpose() const {
  Matrix t(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

std::vector<double> Matrix::operator*(std::span<const double> x) const {
  if (x.size() != cols_) throw IndexError("matrix-vector shape mismatch");
  std::vector<double> y(rows_, 0.0);
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += (*this)(i, j) * x[j];
    y[i] = s;
  }
  return y;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw IndexError("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      const double a = (*this)(i, k);
      if (a == 0.0) continue;
      for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
    }
  return r;
}

Matrix Matrix::operator+(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw IndexError("matrix sum shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
  return r;
}

Matrix Matrix::operator-(const Matrix& o) const {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw IndexError("matrix difference shape mismatch");
  Matrix r = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
  return r;
}

Matrix Matrix::operator*(double s) const {
  Matrix r = *this;
  for (double& v : r.data_) v *= s;
  return r;
}

double Matrix::norm_inf() const {
  double best = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < cols_; ++j) s += std::abs((*this)(i, j));
    best = std::max(best, s);
  }
  return best;
}

double Matrix::max_abs() const {
  double best = 0.0;
  for (double v : data_) best = std::max(best, std::abs(v));
  return best;
}

double norm_inf(std::span<const double> x) {
  double best = 0.0;
  for (double v : x) best = std::max(best, std::abs(v));
  return best;
}

namespace {

// In-place elimination; returns the smallest pivot magnitude seen and stops
// early (returning 0) at an exactly zero column.
double eliminate(Matrix& a, std::vector<std::size_t>& perm, int& sign) {
  const std::size_t n = a.rows();
  perm.resize(n);
  for (std::size_t i = 0; i < n; ++i) perm[i] = i;
  sign = 1;
  double min_pivot = n ? std::numeric_limits<double>::infinity() : 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (p != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      std::swap(perm[k], perm[p]);
      sign = -sign;
    }
    const double piv = a(k, k);
    min_pivot = std::min(min_pivot, std::abs(piv));
    if (piv == 0.0) return 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / piv;
      a(i, k) = f;
      if (f == 0.0) continue;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return min_pivot;
}

}  // namespace

LuFactor::LuFactor(Matrix a) : lu_(std::move(a)) {
  if (lu_.rows() != lu_.cols()) throw IndexError("LU of a non-square matrix");
  const double scale = lu_.norm_inf();
  min_pivot_ = eliminate(lu_, perm_, sign_);
  if (lu_.rows() > 0 && (scale == 0.0 || min_pivot_ < 1e-12 * scale)) {
    std::ostringstream msg;
    msg << "singular matrix: pivot " << min_pivot_ << " below 1e-12 * ||A||_inf = "
        << 1e-12 * scale;
    throw SingularMatrix(msg.str());
  }
}

std::vector<double> LuFactor::solve(std::span<const double> b) const {
  const std::size_t n = lu_.rows();
  if (b.size() != n) throw IndexError("right-hand side has wrong length");
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[perm_[i]];
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < i; ++j) x[i] -= lu_(i, j) * x[j];
  for (std::size_t i = n; i-- > 0;) {
    for (std::size_t j = i + 1; j < n; ++j) x[i] -= lu_(i, j) * x[j];
    x[i] /= lu_(i, i);
  }
  return x;
}

Matrix LuFactor::solve(const Matrix& b) const {
  Matrix x(b.rows(), b.cols());
  std::vector<double> col(b.rows());
  for (std::size_t c = 0; c < b.cols(); ++c) {
    for (std::size_t r = 0; r < b.rows(); ++r) col[r] = b(r, c);
    const auto s = solve(col);
    for (std::size_t r = 0; r < b.rows(); ++r) x(r, c) = s[r];
  }
  return x;
}

double LuFactor::determinant() const {
  double d = sign_;
  for (std::size_t i = 0; i < lu_.rows(); ++i) d *= lu_(i, i);
  return d;
}

std::vector<double> solve_dense(const Matrix& a, std::span<const double> b) {
  return LuFactor(a).solve(b);
}

Matrix inverse(const Matrix& a) { return LuFactor(a).solve(Matrix::identity(a.rows())); }

double determinant(const Matrix& a) {
  if (a.rows() != a.cols()) throw IndexError("determinant of a non-square matrix");
  Matrix work = a;
  std::vector<std::size_t> perm;
  int sign = 1;
  if (eliminate(work, perm, sign) == 0.0) return 0.0;
  double d = sign;
  for (std::size_t i = 0; i < work.rows(); ++i) d *= work(i, i);
  return d;
}

double min_abs_pivot(Matrix a) {
  std::vector<std::size_t> perm;
  int sign = 1;
  return eliminate(a, perm, sign);
}

Matrix null_space(const Matrix& a, double tol) {
  // Reduced row echelon form with full column scan and row pivoting.
  Matrix r = a;
  const std::size_t rows = r.rows(), cols = r.cols();
  const double thresh = tol * std::max(1.0, r.max_abs());
  std::vector<std::size_t> pivot_cols;
  std::size_t prow = 0;
  for (std::size_t c = 0; c < cols && prow < rows; ++c) {
    std::size_t best = prow;
    for (std::size_t i = prow + 1; i < rows; ++i)
      if (std::abs(r(i, c)) > std::abs(r(best, c))) best = i;
    if (std::abs(r(best, c)) <= thresh) {
      for (std::size_t i = prow; i < rows; ++i) r(i, c) = 0.0;
      continue;
    }
    for (std::size_t j = 0; j < cols; ++j) std::swap(r(prow, j), r(best, j));
    const double piv = r(prow, c);
    for (std::size_t j = 0; j < cols; ++j) r(prow, j) /= piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == prow) continue;
      const double f = r(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < cols; ++j) r(i, j) -= f * r(prow, j);
    }
    pivot_cols.push_back(c);
    ++prow;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<double>> basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    std::vector<double> v(cols, 0.0);
    v[f] = 1.0;
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) v[pivot_cols[k]] = -r(k, f);
    basis.push_back(std::move(v));
  }
  // Modified Gram-Schmidt.
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      double dot = 0.0;
      for (std::size_t c = 0; c < cols; ++c) dot += basis[i][c] * basis[j][c];
      for (std::size_t c = 0; c < cols; ++c) basis[i][c] -= dot * basis[j][c];
    }
    double nrm = 0.0;
    for (double v : basis[i]) nrm += v * v;
    nrm = std::sqrt(nrm);
    for (double& v : basis[i]) v /= nrm;
  }
  Matrix out(cols, basis.size());
  for (std::size_t j = 0; j < basis.size(); ++j)
    for (std::size_t c = 0; c < cols; ++c) out(c, j) = basis[j][c];
  return out;
}

}  // namespace routhk
