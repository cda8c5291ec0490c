#pragma once

#include <cstddef>
#include <vector>

namespace splinecal {

/// Dense row-major matrix of doubles. Sized for the small systems this
/// library solves (knot counts up to a few dozen, score tables N x K).
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  static Matrix identity(std::size_t n);

  bool operator==(const Matrix&) const = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix matmul(const Matrix& a, const Matrix& b);
std::vector<double> matvec(const Matrix& a, const std::vector<double>& x);

/// Solves S x = b for symmetric positive definite S via Cholesky.
/// Throws std::runtime_error if a pivot is not positive (S singular or
/// indefinite).
std::vector<double> solve_spd(Matrix s, std::vector<double> b);

/// Thomas algorithm for a tridiagonal system. `sub` and `sup` have length
/// n-1, `diag` and `b` length n. Intended for diagonally dominant systems;
/// throws std::runtime_error on a vanishing pivot.
std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                      std::vector<double> diag,
                                      const std::vector<double>& sup,
                                      std::vector<double> b);

}  // namespace splinecal
