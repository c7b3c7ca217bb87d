#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace routhk {

/// Small dense row-major matrix.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);
  static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<double> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const double> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  Matrix transpose() const;
  std::vector<double> operator*(std::span<const double> x) const;
  Matrix operator*(const Matrix& o) const;
  Matrix operator+(const Matrix& o) const;
  Matrix operator-(const Matrix& o) const;
  Matrix operator*(double s) const;

  /// Maximum absolute row sum.
  double norm_inf() const;
  double max_abs() const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

double norm_inf(std::span<const double> x);

/// LU factorization with partial pivoting.
class LuFactor {
 public:
  /// Throws SingularMatrix when a pivot drops below 1e-12 * ||A||_inf.
  explicit LuFactor(Matrix a);

  std::vector<double> solve(std::span<const double> b) const;
  Matrix solve(const Matrix& b) const;
  double determinant() const;
  double min_abs_pivot() const { return min_pivot_; }
  std::size_t size() const { return lu_.rows(); }

 private:
  Matrix lu_;
  std::vector<std::size_t> perm_;
  int sign_ = 1;
  double min_pivot_ = 0.0;
};

/// Solves A x = b with partial pivoting.
std::vector<double> solve_dense(const Matrix& a, std::span<const double> b);

Matrix inverse(const Matrix& a);
double determinant(const Matrix& a);

/// Smallest |pivot| met during partially pivoted elimination; never throws.
/// A zero result means the matrix is singular to working precision.
double min_abs_pivot(Matrix a);

/// Orthonormal basis (as columns) of the null space of a, using pivoted
/// elimination with relative tolerance tol.
Matrix null_space(const Matrix& a, double tol = 1e-10);

}  // namespace routhk
