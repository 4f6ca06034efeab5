#pragma once

#include "stepline/rational.hpp"

#include <cstddef>
#include <vector>

namespace stepline {

/// Dense row-major matrix of exact rationals.
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  Rational& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Rational& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Copy of the block [r0, r0+nr) x [c0, c0+nc).
  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const;
  Matrix leading(std::size_t n) const { return block(0, 0, n, n); }
  Matrix transpose() const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Rational> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator+(const Matrix& a, const Matrix& b);

/// Multiplies a by diag(d) on the right.
Matrix scale_columns(const Matrix& a, const std::vector<Rational>& d);
/// Multiplies a by diag(d) on the left.
Matrix scale_rows(const std::vector<Rational>& d, const Matrix& a);

bool is_zero(const Matrix& a);

/// Exact inverse by Gauss-Jordan elimination with row pivoting.
/// Throws std::domain_error if the matrix is singular.
Matrix inverse(const Matrix& a);

} // namespace stepline
