// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/mlp.hpp"

#include <cmath>
#include <fstream>

#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/kernels.hpp"
#include "qsarbench/rng.hpp"

namespace qsarbench {
namespace {

struct MlpModel {
  MlpParams params;

  std::vector<double> flatten() const { return params.flatten(); }
  void assign(std::span<const double> flat) { params.assign(flat); }
  double score(std::span<const double> x) const { return mlp_forward(params, x); }
  double loss_and_gradient(const Matrix& x, std::span<const double> y,
                           std::span<const std::size_t> rows, std::span<double> grad) const {
    return mlp_loss_and_gradient(params, x, y, rows, grad);
  }
};

}  // namespace

MlpParams::MlpParams(std::size_t n) : inputs(n), w1(kHiddenUnits * n, 0.0), w2(kHiddenUnits, 0.0) {
  if (count() != count_for(n)) {
    throw Error(ErrorCode::InvariantViolation, "MLP parameter count is not 2(N+1)");
  }
}

std::vector<double> MlpParams::flatten() const {
  std::vector<double> flat(w1);
  flat.insert(flat.end(), w2.begin(), w2.end());
  return flat;
}

void MlpParams::assign(std::span<const double> flat) {
  if (flat.size() != count()) throw Error(ErrorCode::DimensionMismatch, "MLP parameter size");
  std::copy(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(w1.size()), w1.begin());
  std::copy(flat.begin() + static_cast<std::ptrdiff_t>(w1.size()), flat.end(), w2.begin());
}

MlpParams MlpParams::initialize(std::size_t n, std::uint64_t seed) {
  MlpParams p(n);
  Rng rng(seed);
  const double b1 = 1.0 / std::sqrt(static_cast<double>(n));
  const double b2 = 1.0 / std::sqrt(static_cast<double>(kHiddenUnits));
  for (double& w : p.w1) w = rng.uniform(-b1, b1);
  for (double& w : p.w2) w = rng.uniform(-b2, b2);
  return p;
}

double mlp_forward(const MlpParams& p, std::span<const double> x) {
  if (x.size() != p.inputs) {
    throw Error(ErrorCode::DimensionMismatch, "MLP expects " + std::to_string(p.inputs) +
                                                  " inputs, got " + std::to_string(x.size()));
  }
  const auto& k = kernels::active();
  double score = 0.0;
  for (std::size_t j = 0; j < kHiddenUnits; ++j) {
    score += p.w2[j] * std::tanh(k.dot(p.w1.data() + j * p.inputs, x.data(), p.inputs));
  }
  return score;
}

double mlp_loss_and_gradient(const MlpParams& p, const Matrix& x, std::span<const double> y,
                             std::span<const std::size_t> rows, std::span<double> grad) {
  if (rows.empty()) throw Error(ErrorCode::EmptyBatch, "gradient of an empty batch");
  if (x.cols() != p.inputs) throw Error(ErrorCode::DimensionMismatch, "MLP input width");
  if (grad.size() != p.count()) throw Error(ErrorCode::DimensionMismatch, "gradient buffer size");
  const auto& k = kernels::active();
  const std::size_t n = p.inputs;
  std::fill(grad.begin(), grad.end(), 0.0);
  double* g1 = grad.data();
  double* g2 = grad.data() + kHiddenUnits * n;
  const double inv_batch = 1.0 / static_cast<double>(rows.size());

  double loss = 0.0;
  for (std::size_t r : rows) {
    const auto xr = x.row(r);
    double hidden[kHiddenUnits];
    double score = 0.0;
    for (std::size_t j = 0; j < kHiddenUnits; ++j) {
      hidden[j] = std::tanh(k.dot(p.w1.data() + j * n, xr.data(), n));
      score += p.w2[j] * hidden[j];
    }
    const double residual = score - y[r];
    loss += residual * residual;
    const double d_score = 2.0 * residual * inv_batch;
    for (std::size_t j = 0; j < kHiddenUnits; ++j) {
      g2[j] += d_score * hidden[j];
      const double d_pre = d_score * p.w2[j] * (1.0 - hidden[j] * hidden[j]);
      k.axpy(d_pre, xr.data(), g1 + j * n, n);
    }
  }
  return loss * inv_batch;
}

std::vector<double> mlp_gradient(const MlpParams& p, const Matrix& x, std::span<const double> y) {
  std::vector<std::size_t> rows(x.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<double> grad(p.count());
  mlp_loss_and_gradient(p, x, y, rows, grad);
  return grad;
}

MlpTrainResult train_mlp(const TrainingData& data, const OptimizerConfig& config,
                         std::uint64_t init_seed, const BatchSchedule& schedule) {
  config.validate();
  MlpModel model{MlpParams::initialize(data.features(), init_seed)};
  TrainTrace trace = run_training(model, data, config, schedule);
  return {std::move(model.params), std::move(trace)};
}

MlpTrainResult train_mlp(const TrainingData& data, const OptimizerConfig& config,
                         std::uint64_t seed) {
  config.validate();
  const BatchSchedule schedule(data.train_x.rows(), config.batch_size, config.epochs,
                               derive_seed(seed, "batches"));
  return train_mlp(data, config, derive_seed(seed, "init/classical"), schedule);
}

void write_mlp_csv(const MlpParams& p, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write " + path.string());
  const auto flat = p.flatten();
  for (std::size_t i = 0; i < flat.size(); ++i) {
    if (i) out << ',';
    out << csv::format_double(flat[i]);
  }
  out << '\n';
}

}  // namespace qsarbench
