#include "splinecal/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace splinecal {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix matmul(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw std::invalid_argument("matmul: shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

std::vector<double> matvec(const Matrix& a, const std::vector<double>& x) {
  if (a.cols() != x.size()) throw std::invalid_argument("matvec: shape mismatch");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    out[i] = acc;
  }
  return out;
}

std::vector<double> solve_spd(Matrix s, std::vector<double> b) {
  const std::size_t n = s.rows();
  if (s.cols() != n || b.size() != n) throw std::invalid_argument("solve_spd: shape mismatch");

  // In-place lower Cholesky factor.
  for (std::size_t j = 0; j < n; ++j) {
    double d = s(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= s(j, k) * s(j, k);
    if (!(d > 0.0) || !std::isfinite(d)) {
      throw std::runtime_error("solve_spd: matrix is not positive definite");
    }
    const double l = std::sqrt(d);
    s(j, j) = l;
    for (std::size_t i = j + 1; i < n; ++i) {
      double v = s(i, j);
      for (std::size_t k = 0; k < j; ++k) v -= s(i, k) * s(j, k);
      s(i, j) = v / l;
    }
  }

  // Forward then backward substitution.
  for (std::size_t i = 0; i < n; ++i) {
    double v = b[i];
    for (std::size_t k = 0; k < i; ++k) v -= s(i, k) * b[k];
    b[i] = v / s(i, i);
  }
  for (std::size_t ii = n; ii-- > 0;) {
    double v = b[ii];
    for (std::size_t k = ii + 1; k < n; ++k) v -= s(k, ii) * b[k];
    b[ii] = v / s(ii, ii);
  }
  return b;
}

std::vector<double> solve_tridiagonal(const std::vector<double>& sub,
                                      std::vector<double> diag,
                                      const std::vector<double>& sup,
                                      std::vector<double> b) {
  const std::size_t n = diag.size();
  if (n == 0 || b.size() != n || sub.size() + 1 != n || sup.size() + 1 != n) {
    throw std::invalid_argument("solve_tridiagonal: shape mismatch");
  }
  for (std::size_t i = 1; i < n; ++i) {
    if (diag[i - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
    const double f = sub[i - 1] / diag[i - 1];
    diag[i] -= f * sup[i - 1];
    b[i] -= f * b[i - 1];
  }
  if (diag[n - 1] == 0.0) throw std::runtime_error("solve_tridiagonal: zero pivot");
  b[n - 1] /= diag[n - 1];
  for (std::size_t ii = n - 1; ii-- > 0;) {
    b[ii] = (b[ii] - sup[ii] * b[ii + 1]) / diag[ii];
  }
  return b;
}

}  // namespace splinecal
