// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "qsarbench/matrix.hpp"
#include "qsarbench/optimizer.hpp"
#include "qsarbench/training.hpp"

namespace qsarbench {

inline constexpr std::size_t kHiddenUnits = 2;

/// Bias-free N x 2 x 1 perceptron: 2N + 2 = 2(N + 1) weights.
struct MlpParams {
  std::size_t inputs = 0;
  std::vector<double> w1;  // 2 x N, row-major
  std::vector<double> w2;  // 2

  explicit MlpParams(std::size_t n = 0);

  std::size_t count() const noexcept { return w1.size() + w2.size(); }
  static constexpr std::size_t count_for(std::size_t n) noexcept { return kHiddenUnits * (n + 1); }

  /// w1 then w2.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  /// uniform(-1/sqrt(fan_in), +1/sqrt(fan_in)) for each layer.
  static MlpParams initialize(std::size_t n, std::uint64_t seed);
};

/// W2 . tanh(W1 x)
double mlp_forward(const MlpParams& p, std::span<const double> x);

/// Mean squared error over `rows` of (x, y) and its exact gradient (layout of
/// flatten()). Labels are +1 / -1.
double mlp_loss_and_gradient(const MlpParams& p, const Matrix& x, std::span<const double> y,
                             std::span<const std::size_t> rows, std::span<double> grad);

/// Convenience: gradient over every row.
std::vector<double> mlp_gradient(const MlpParams& p, const Matrix& x, std::span<const double> y);

struct MlpTrainResult {
  MlpParams params;
  TrainTrace trace;
};

MlpTrainResult train_mlp(const TrainingData& data, const OptimizerConfig& config,
                         std::uint64_t init_seed, const BatchSchedule& schedule);

/// Same, with init and batch seeds derived from one seed.
MlpTrainResult train_mlp(const TrainingData& data, const OptimizerConfig& config,
                         std::uint64_t seed);

/// One line: comma-separated flatten() values.
void write_mlp_csv(const MlpParams& p, const std::filesystem::path& path);

}  // namespace qsarbench
