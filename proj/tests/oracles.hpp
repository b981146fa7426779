// Test-only independent oracles. Everything here recomputes expected values
// through a different route than the library (closed forms, brute-force
// elimination, direct summation) so the two sides stay independent.
#pragma once

#include <Eigen/Core>
#include <cmath>
#include <complex>

namespace oracle {

using Complex = std::complex<double>;

/// Geometric closed form of the unnormalized Hardy kernel norm^2 on P_{N-1}.
inline double hardy_norm_sq(double r, int n) {
  const double x = r * r;
  if (x == 0.0) return 1.0;
  return (1.0 - std::pow(x, n)) / (1.0 - x);
}

/// Closed form of the Bergman kernel norm^2: sum (k+1) x^k, x = r^2.
inline double bergman_norm_sq(double r, int n) {
  const double x = r * r;
  if (x == 0.0) return 1.0;
  const double xn = std::pow(x, n);
  return (1.0 - (n + 1) * xn + n * xn * x) / ((1.0 - x) * (1.0 - x));
}

// Example 3.6 closed forms on the full Hardy space.
inline double example36_symbol(double r) { return r * r * (1.0 - r * r); }
inline double example36_action(double r) { return r * std::sqrt(1.0 - r * r); }
inline double example36_defect(double r) {
  const double s = example36_symbol(r);
  return s - s * s;
}

/// Rank by hand-rolled complex Gaussian elimination with partial pivoting
/// (deliberately not Eigen's SVD, which the implementation uses).
inline int elimination_rank(Eigen::MatrixXcd m, double rel_tol = 1e-8) {
  const int rows = static_cast<int>(m.rows());
  const int cols = static_cast<int>(m.cols());
  double scale = 0.0;
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) scale = std::max(scale, std::abs(m(i, j)));
  if (scale == 0.0) return 0;
  const double tol = rel_tol * scale;
  int rank = 0;
  int row = 0;
  for (int col = 0; col < cols && row < rows; ++col) {
    int pivot = row;
    for (int i = row + 1; i < rows; ++i)
      if (std::abs(m(i, col)) > std::abs(m(pivot, col))) pivot = i;
    if (std::abs(m(pivot, col)) <= tol) continue;
    m.row(pivot).swap(m.row(row));
    for (int i = row + 1; i < rows; ++i) {
      const Complex f = m(i, col) / m(row, col);
      m.row(i) -= f * m.row(row);
    }
    ++rank;
    ++row;
  }
  return rank;
}

}  // namespace oracle
