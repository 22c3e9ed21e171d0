// SPDX-License-Identifier: Apache-2.0
//
// Eigenvalues of small symmetric matrices from the characteristic polynomial:
// det(A - tI) by cofactor expansion, roots by sign scan plus bisection.
#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

namespace oracle {

using RealMatrix = std::vector<std::vector<double>>;

inline double det_laplace(const RealMatrix& a) {
  const std::size_t n = a.size();
  if (n == 1) return a[0][0];
  if (n == 2) return a[0][0] * a[1][1] - a[0][1] * a[1][0];
  double det = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    RealMatrix minor;
    for (std::size_t r = 1; r < n; ++r) {
      std::vector<double> row;
      for (std::size_t c = 0; c < n; ++c) {
        if (c != col) row.push_back(a[r][c]);
      }
      minor.push_back(std::move(row));
    }
    det += (col % 2 ? -1.0 : 1.0) * a[0][col] * det_laplace(minor);
  }
  return det;
}

inline double char_poly(const RealMatrix& a, double t) {
  RealMatrix shifted = a;
  for (std::size_t i = 0; i < a.size(); ++i) shifted[i][i] -= t;
  return det_laplace(shifted);
}

/// Roots found on a uniform scan of the Gershgorin interval, descending.
/// Misses pairs of roots closer than the scan step.
inline std::vector<double> scan_roots(const RealMatrix& a, int steps) {
  double bound = 0.0;  // Gershgorin
  for (const auto& row : a) {
    double s = 0.0;
    for (double v : row) s += std::abs(v);
    bound = std::max(bound, s);
  }
  bound += 1.0;
  std::vector<double> roots;
  const double h = 2.0 * bound / steps;
  double lo = -bound;
  double f_lo = char_poly(a, lo);
  for (int i = 1; i <= steps; ++i) {
    const double hi = -bound + i * h;
    const double f_hi = char_poly(a, hi);
    if (f_lo == 0.0) {
      roots.push_back(lo);
    } else if ((f_lo < 0) != (f_hi < 0) && f_hi != 0.0) {
      double l = lo, r = hi, fl = f_lo;
      for (int it = 0; it < 200; ++it) {
        const double m = 0.5 * (l + r);
        const double fm = char_poly(a, m);
        if ((fm < 0) == (fl < 0)) {
          l = m;
          fl = fm;
        } else {
          r = m;
        }
      }
      roots.push_back(0.5 * (l + r));
    }
    lo = hi;
    f_lo = f_hi;
  }
  std::sort(roots.rbegin(), roots.rend());
  return roots;
}

/// All eigenvalues of a symmetric matrix with distinct eigenvalues, refining
/// the scan until every root is bracketed.
inline std::vector<double> char_poly_roots(const RealMatrix& a) {
  std::vector<double> roots;
  for (int steps = 1000; steps <= 1024000; steps *= 4) {
    roots = scan_roots(a, steps);
    if (roots.size() >= a.size()) break;
  }
  return roots;
}

}  // namespace oracle
