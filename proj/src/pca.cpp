// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/pca.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>

#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/kernels.hpp"

namespace qsarbench {
namespace {

double frobenius(const Matrix& a) {
  double sum = 0.0;
  for (double v : a.data()) sum += v * v;
  return std::sqrt(sum);
}

double off_diagonal(const Matrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = i + 1; j < a.cols(); ++j) sum += 2.0 * a(i, j) * a(i, j);
  }
  return std::sqrt(sum);
}

}  // namespace

SymmetricEigen jacobi_eigen(Matrix a, double tolerance, int max_sweeps) {
  const std::size_t m = a.rows();
  if (a.cols() != m) throw Error(ErrorCode::DimensionMismatch, "matrix is not square");
  const auto& k = kernels::active();

  Matrix w(m, m);  // accumulates J^T ... ; rows end up as eigenvectors
  for (std::size_t i = 0; i < m; ++i) w(i, i) = 1.0;

  const double norm = frobenius(a);
  const double target = tolerance * norm;
  // Entries below this cannot keep the off-norm above target.
  const double negligible = m > 0 ? 1e-2 * target / static_cast<double>(m) : 0.0;

  int sweep = 0;
  for (; sweep < max_sweeps; ++sweep) {
    if (norm == 0.0 || off_diagonal(a) < target) break;
    for (std::size_t p = 0; p + 1 < m; ++p) {
      for (std::size_t q = p + 1; q < m; ++q) {
        const double apq = a(p, q);
        if (std::abs(apq) <= negligible) continue;
        const double app = a(p, p);
        const double aqq = a(q, q);
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;

        k.rotate(a.row(p).data(), a.row(q).data(), m, c, s);
        for (std::size_t r = 0; r < m; ++r) {
          if (r == p || r == q) continue;
          a(r, p) = a(p, r);
          a(r, q) = a(q, r);
        }
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        k.rotate(w.row(p).data(), w.row(q).data(), m, c, s);
      }
    }
  }

  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t i, std::size_t j) { return a(i, i) > a(j, j); });
  SymmetricEigen out;
  out.sweeps = sweep;
  out.values.reserve(m);
  out.vectors = Matrix(m, m);
  for (std::size_t i = 0; i < m; ++i) {
    out.values.push_back(a(order[i], order[i]));
    const auto src = w.row(order[i]);
    std::copy(src.begin(), src.end(), out.vectors.row(i).begin());
  }
  return out;
}

Matrix covariance(const Matrix& x, const std::vector<double>& mean) {
  const std::size_t rows = x.rows();
  const std::size_t m = x.cols();
  const auto& k = kernels::active();
  Matrix cov(m, m);
  std::vector<double> centered(m);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t j = 0; j < m; ++j) centered[j] = row[j] - mean[j];
    for (std::size_t i = 0; i < m; ++i) {
      if (centered[i] == 0.0) continue;
      k.axpy(centered[i], centered.data() + i, cov.row(i).data() + i, m - i);
    }
  }
  const double scale = 1.0 / static_cast<double>(rows - 1);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = i; j < m; ++j) {
      cov(i, j) *= scale;
      cov(j, i) = cov(i, j);
    }
  }
  return cov;
}

PcaModel fit_pca(const Matrix& x, std::size_t k) {
  const std::size_t rows = x.rows();
  const std::size_t m = x.cols();
  if (rows < 2) throw Error(ErrorCode::DegenerateInput, "PCA needs at least two rows");
  if (k == 0 || k > std::min(rows - 1, m)) {
    throw Error(ErrorCode::KTooLarge, "k=" + std::to_string(k) + " exceeds min(rows-1, cols)=" +
                                          std::to_string(std::min(rows - 1, m)));
  }

  PcaModel model;
  model.mean.assign(m, 0.0);
  for (std::size_t r = 0; r < rows; ++r) {
    const auto row = x.row(r);
    for (std::size_t j = 0; j < m; ++j) model.mean[j] += row[j];
  }
  for (double& v : model.mean) v /= static_cast<double>(rows);

  const SymmetricEigen eig = jacobi_eigen(covariance(x, model.mean));
  model.components = Matrix(k, m);
  model.eigenvalues.resize(k);
  for (std::size_t i = 0; i < k; ++i) {
    model.eigenvalues[i] = std::max(eig.values[i], 0.0);
    const auto src = eig.vectors.row(i);
    std::size_t pivot = 0;
    for (std::size_t j = 1; j < m; ++j) {
      if (std::abs(src[j]) > std::abs(src[pivot])) pivot = j;
    }
    const double sign = src[pivot] < 0.0 ? -1.0 : 1.0;
    auto dst = model.components.row(i);
    for (std::size_t j = 0; j < m; ++j) dst[j] = sign * src[j];
  }
  return model;
}

Matrix transform(const PcaModel& model, const Matrix& x) {
  if (x.cols() != model.dim()) {
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(model.dim()) +
                                                  " columns, got " + std::to_string(x.cols()));
  }
  const auto& k = kernels::active();
  Matrix out(x.rows(), model.k());
  std::vector<double> centered(model.dim());
  for (std::size_t r = 0; r < x.rows(); ++r) {
    const auto row = x.row(r);
    for (std::size_t j = 0; j < model.dim(); ++j) centered[j] = row[j] - model.mean[j];
    for (std::size_t c = 0; c < model.k(); ++c) {
      out(r, c) = k.dot(centered.data(), model.components.row(c).data(), model.dim());
    }
  }
  return out;
}

PcaModel truncate(const PcaModel& model, std::size_t k) {
  if (k > model.k()) throw Error(ErrorCode::KTooLarge, "cannot truncate to more axes");
  PcaModel out;
  out.mean = model.mean;
  out.components = Matrix(k, model.dim());
  for (std::size_t i = 0; i < k; ++i) {
    const auto src = model.components.row(i);
    std::copy(src.begin(), src.end(), out.components.row(i).begin());
  }
  out.eigenvalues.assign(model.eigenvalues.begin(),
                         model.eigenvalues.begin() + static_cast<std::ptrdiff_t>(k));
  return out;
}

void write_pca_csv(const PcaModel& model, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  auto write_row = [&out](std::span<const double> values) {
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) out << ',';
      out << csv::format_double(values[i]);
    }
    out << '\n';
  };
  write_row(model.mean);
  for (std::size_t i = 0; i < model.k(); ++i) write_row(model.components.row(i));
  write_row(model.eigenvalues);
  if (!out) throw Error(ErrorCode::IoError, "write failed for " + path.string());
}

PcaModel read_pca_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::UnreadableFile, "cannot open " + path.string());
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<double> values;
    for (const std::string& field : csv::split_line(line)) {
      const auto v = csv::parse_double(field);
      if (!v) throw Error(ErrorCode::DimensionMismatch, "non-numeric PCA model entry");
      values.push_back(*v);
    }
    rows.push_back(std::move(values));
  }
  if (rows.size() < 3) throw Error(ErrorCode::DimensionMismatch, "PCA model file is truncated");
  PcaModel model;
  model.mean = rows.front();
  model.eigenvalues = rows.back();
  const std::size_t k = rows.size() - 2;
  if (model.eigenvalues.size() != k) {
    throw Error(ErrorCode::DimensionMismatch, "eigenvalue row does not match component count");
  }
  model.components = Matrix(k, model.mean.size());
  for (std::size_t i = 0; i < k; ++i) {
    if (rows[i + 1].size() != model.mean.size()) {
      throw Error(ErrorCode::DimensionMismatch, "component row has the wrong length");
    }
    std::copy(rows[i + 1].begin(), rows[i + 1].end(), model.components.row(i).begin());
  }
  return model;
}

}  // namespace qsarbench
