// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <vector>

#include "qsarbench/matrix.hpp"

namespace qsarbench {

/// Eigenpairs of a symmetric matrix, sorted by value descending. Row i of
/// `vectors` is the unit eigenvector for `values[i]`.
struct SymmetricEigen {
  std::vector<double> values;
  Matrix vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations; stops when the off-diagonal Frobenius norm drops
/// below `tolerance * ||A||_F`. Vectors are not sign-normalised.
SymmetricEigen jacobi_eigen(Matrix a, double tolerance = 1e-12, int max_sweeps = 100);

/// Sample covariance (divisor rows - 1) of `x` around `mean`.
Matrix covariance(const Matrix& x, const std::vector<double>& mean);

struct PcaModel {
  std::vector<double> mean;          // M
  Matrix components;                 // k x M, orthonormal rows
  std::vector<double> eigenvalues;   // k, descending, >= 0

  std::size_t k() const noexcept { return components.rows(); }
  std::size_t dim() const noexcept { return mean.size(); }
};

/// Fits on the rows of `x` and keeps the top-k axes. Each axis is signed so
/// that its largest-magnitude entry is positive (first such entry on ties).
/// Throws DegenerateInput for fewer than 2 rows, KTooLarge for
/// k > min(rows - 1, cols).
PcaModel fit_pca(const Matrix& x, std::size_t k);

/// (x - mean) * components^T
Matrix transform(const PcaModel& model, const Matrix& x);

/// Model restricted to its first k axes.
PcaModel truncate(const PcaModel& model, std::size_t k);

/// Headerless CSV: mean row, k component rows, eigenvalue row.
void write_pca_csv(const PcaModel& model, const std::filesystem::path& path);
PcaModel read_pca_csv(const std::filesystem::path& path);

}  // namespace qsarbench
