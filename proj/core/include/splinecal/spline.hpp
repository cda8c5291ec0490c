#pragma once

#include <span>
#include <vector>

#include "splinecal/matrix.hpp"

namespace splinecal {

/// K >= 3 uniformly spaced knots on [lo, hi].
struct KnotGrid {
  KnotGrid(std::size_t n_knots, double lo, double hi);

  std::size_t n_knots;
  double lo;
  double hi;

  double spacing() const { return (hi - lo) / static_cast<double>(n_knots - 1); }
  /// 0-based; the last knot is exactly `hi`.
  double knot(std::size_t i) const;
  /// Index j of the interval [knot(j), knot(j+1)] containing x, in
  /// 0..n_knots-2. x exactly on an interior knot maps to the interval that
  /// starts there. Throws if x is outside [lo, hi].
  std::size_t interval(double x) const;

  bool operator==(const KnotGrid&) const = default;
};

/// The linear systems behind a natural cubic spline on a uniform grid:
///   curvature_system   (K-2)x(K-2), tridiagonal [1 4 1]
///   curvature_rhs      (K-2)xK, (6/h^2) banded [1 -2 1]
///   mapping            2KxK, rows: 0, curvature_system^-1 * curvature_rhs, 0, I
/// mapping sends knot values to the stacked (curvatures, values) vector the
/// basis functions contract against. The zero rows pin the end curvatures,
/// which is the natural (linear-runout) boundary condition.
struct DesignMatrices {
  Matrix curvature_system;
  Matrix curvature_rhs;
  Matrix mapping;
};

DesignMatrices design_matrices(std::size_t n_knots, double spacing);

/// Basis coefficient vector a(x) of length 2K: at most four nonzero entries,
/// two against the interval's end curvatures and two against its end values.
/// The spline value is a(x) . (mapping * knot_values).
std::vector<double> basis(double x, const KnotGrid& grid);

/// d/dx of `basis`, term by term.
std::vector<double> basis_derivative(double x, const KnotGrid& grid);

/// Natural cubic spline with least-squares fitted knot values. Immutable
/// after fit; evaluation and differentiation are pure.
class Spline {
public:
  /// Least-squares fit of the knot values to points (u[i], v[i]), solved by
  /// normal equations with a Cholesky factorization. Requires at least as
  /// many points as knots and every u inside the grid domain. Throws
  /// std::runtime_error on a rank-deficient design (e.g. all u identical).
  static Spline fit(std::span<const double> u, std::span<const double> v, const KnotGrid& grid);

  double value(double x) const;
  double derivative(double x) const;

  const KnotGrid& grid() const { return grid_; }
  const std::vector<double>& knot_values() const { return knot_values_; }
  const Matrix& mapping() const { return mapping_; }
  /// RMS residual of the fit over the input points.
  double rms_residual() const { return rms_residual_; }

private:
  Spline(KnotGrid grid, std::vector<double> knot_values, Matrix mapping, double rms);

  KnotGrid grid_;
  std::vector<double> knot_values_;
  Matrix mapping_;
  std::vector<double> folded_;  // mapping * knot_values, cached for evaluation
  double rms_residual_ = 0.0;
};

}  // namespace splinecal
