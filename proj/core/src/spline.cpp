#include "splinecal/spline.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <string>

namespace splinecal {

KnotGrid::KnotGrid(std::size_t n, double lo_, double hi_) : n_knots(n), lo(lo_), hi(hi_) {
  if (n < 3) throw std::invalid_argument("grid needs at least 3 knots");
  if (!(lo < hi)) throw std::invalid_argument("grid requires lo < hi");
}

double KnotGrid::knot(std::size_t i) const {
  if (i + 1 == n_knots) return hi;
  return lo + static_cast<double>(i) * spacing();
}

std::size_t KnotGrid::interval(double x) const {
  if (x < lo || x > hi) {
    throw std::invalid_argument("x = " + std::to_string(x) + " outside knot domain [" +
                                std::to_string(lo) + ", " + std::to_string(hi) + "]");
  }
  const std::size_t last = n_knots - 2;
  double pos = (x - lo) / spacing();
  if (pos < 0.0) pos = 0.0;
  std::size_t j = std::min(static_cast<std::size_t>(pos), last);
  // Rounding in the division can land one interval off; nudge so that
  // knot(j) <= x and x on an interior knot starts a new interval.
  while (j > 0 && x < knot(j)) --j;
  while (j < last && x >= knot(j + 1)) ++j;
  return j;
}

DesignMatrices design_matrices(std::size_t n_knots, double spacing) {
  if (n_knots < 3) throw std::invalid_argument("design_matrices: need at least 3 knots");
  if (!(spacing > 0.0)) throw std::invalid_argument("design_matrices: spacing must be positive");

  const std::size_t k = n_knots;
  const std::size_t m = k - 2;

  Matrix a(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    a(i, i) = 4.0;
    if (i > 0) a(i, i - 1) = 1.0;
    if (i + 1 < m) a(i, i + 1) = 1.0;
  }

  const double scale = 6.0 / (spacing * spacing);
  Matrix b(m, k);
  for (std::size_t i = 0; i < m; ++i) {
    b(i, i) = scale;
    b(i, i + 1) = -2.0 * scale;
    b(i, i + 2) = scale;
  }

  // One tridiagonal solve per column of the rhs. The [1 4 1] system is
  // strictly diagonally dominant, so the pivots cannot vanish.
  std::vector<double> sub(m > 1 ? m - 1 : 0, 1.0);
  std::vector<double> diag(m, 4.0);
  Matrix interior(m, k);
  for (std::size_t col = 0; col < k; ++col) {
    std::vector<double> rhs(m);
    for (std::size_t i = 0; i < m; ++i) rhs[i] = b(i, col);
    const auto sol = solve_tridiagonal(sub, diag, sub, std::move(rhs));
    for (std::size_t i = 0; i < m; ++i) interior(i, col) = sol[i];
  }

  Matrix mapping(2 * k, k);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t col = 0; col < k; ++col) mapping(1 + i, col) = interior(i, col);
  }
  for (std::size_t i = 0; i < k; ++i) mapping(k + i, i) = 1.0;

  return {std::move(a), std::move(b), std::move(mapping)};
}

std::vector<double> basis(double x, const KnotGrid& grid) {
  const std::size_t k = grid.n_knots;
  std::vector<double> v(2 * k, 0.0);
  if (x == grid.hi) {
    v[2 * k - 1] = 1.0;  // exact value at the right endpoint
    return v;
  }
  const std::size_t j = grid.interval(x);
  const double h = grid.spacing();
  const double u = x - grid.knot(j);
  v[j] = -u * u * u / (6.0 * h) + u * u / 2.0 - h * u / 3.0;
  v[j + 1] = u * u * u / (6.0 * h) - h * u / 6.0;
  v[j + k] = -u / h + 1.0;
  v[j + 1 + k] = u / h;
  return v;
}

std::vector<double> basis_derivative(double x, const KnotGrid& grid) {
  const std::size_t k = grid.n_knots;
  const std::size_t j = grid.interval(x);
  const double h = grid.spacing();
  const double u = x - grid.knot(j);
  std::vector<double> v(2 * k, 0.0);
  v[j] = -u * u / (2.0 * h) + u - h / 3.0;
  v[j + 1] = u * u / (2.0 * h) - h / 6.0;
  v[j + k] = -1.0 / h;
  v[j + 1 + k] = 1.0 / h;
  return v;
}

Spline::Spline(KnotGrid grid, std::vector<double> knot_values, Matrix mapping, double rms)
    : grid_(grid),
      knot_values_(std::move(knot_values)),
      mapping_(std::move(mapping)),
      rms_residual_(rms) {
  folded_ = matvec(mapping_, knot_values_);
}

Spline Spline::fit(std::span<const double> u, std::span<const double> v, const KnotGrid& grid) {
  const std::size_t n = u.size();
  const std::size_t k = grid.n_knots;
  if (v.size() != n) throw std::invalid_argument("fit: u and v lengths differ");
  if (n < k) {
    throw std::invalid_argument("fit: " + std::to_string(n) + " points cannot determine " +
                                std::to_string(k) + " knot values");
  }

  auto design = design_matrices(k, grid.spacing());
  const Matrix& mapping = design.mapping;

  // Design row for point u_i is a(u_i)^T mapping, assembled from the four
  // nonzero basis entries. Accumulate the normal equations directly.
  Matrix gram(k, k);
  std::vector<double> rhs(k, 0.0);
  std::vector<double> row(k);
  for (std::size_t i = 0; i < n; ++i) {
    const auto coeff = basis(u[i], grid);
    std::fill(row.begin(), row.end(), 0.0);
    for (std::size_t q = 0; q < 2 * k; ++q) {
      const double c = coeff[q];
      if (c == 0.0) continue;
      for (std::size_t col = 0; col < k; ++col) row[col] += c * mapping(q, col);
    }
    for (std::size_t r = 0; r < k; ++r) {
      if (row[r] == 0.0) continue;
      for (std::size_t c = 0; c < k; ++c) gram(r, c) += row[r] * row[c];
      rhs[r] += row[r] * v[i];
    }
  }

  std::vector<double> fitted;
  try {
    fitted = solve_spd(gram, rhs);
  } catch (const std::runtime_error&) {
    throw std::runtime_error(
        "fit: rank-deficient design; the points do not constrain every knot "
        "(are all u values identical or clustered in one knot interval?)");
  }

  Spline s(grid, std::move(fitted), std::move(design.mapping), 0.0);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = s.value(u[i]) - v[i];
    ss += r * r;
  }
  s.rms_residual_ = std::sqrt(ss / static_cast<double>(n));
  return s;
}

double Spline::value(double x) const {
  const std::size_t k = grid_.n_knots;
  if (x == grid_.hi) return knot_values_.back();
  const std::size_t j = grid_.interval(x);
  const double h = grid_.spacing();
  const double u = x - grid_.knot(j);
  const double cj = -u * u * u / (6.0 * h) + u * u / 2.0 - h * u / 3.0;
  const double cj1 = u * u * u / (6.0 * h) - h * u / 6.0;
  return cj * folded_[j] + cj1 * folded_[j + 1] + (1.0 - u / h) * folded_[j + k] +
         (u / h) * folded_[j + 1 + k];
}

double Spline::derivative(double x) const {
  const std::size_t k = grid_.n_knots;
  const std::size_t j = grid_.interval(x);
  const double h = grid_.spacing();
  const double u = x - grid_.knot(j);
  const double cj = -u * u / (2.0 * h) + u - h / 3.0;
  const double cj1 = u * u / (2.0 * h) - h / 6.0;
  return cj * folded_[j] + cj1 * folded_[j + 1] +
         (folded_[j + 1 + k] - folded_[j + k]) / h;
}

}  // namespace splinecal
