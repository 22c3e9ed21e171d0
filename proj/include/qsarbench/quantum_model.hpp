// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "qsarbench/matrix.hpp"
#include "qsarbench/optimizer.hpp"
#include "qsarbench/statevector.hpp"
#include "qsarbench/training.hpp"

namespace qsarbench {

/// Two ansatz layers (6n angles) plus an n-weight linear readout: 7n total.
struct QuantumModelParams {
  AnsatzParams ansatz;
  std::vector<double> readout;  // n, no bias

  explicit QuantumModelParams(int qubits = 1);

  int qubits() const noexcept { return ansatz.qubits; }
  std::size_t count() const noexcept { return ansatz.count() + readout.size(); }
  static constexpr std::size_t count_for(int n) noexcept { return 7 * static_cast<std::size_t>(n); }

  /// Angles then readout weights.
  std::vector<double> flatten() const;
  void assign(std::span<const double> flat);

  /// Angles uniform(0, 2 pi), readout uniform(-1/sqrt(n), 1/sqrt(n)).
  static QuantumModelParams initialize(int qubits, std::uint64_t seed);
};

enum class GradientMethod { Adjoint, ParameterShift };

std::string_view to_string(GradientMethod method) noexcept;

/// readout . <Z>(ansatz(embed(x)))
double q_forward(const QuantumModelParams& p, std::span<const double> x);

/// Mean squared error over `rows` and its gradient (layout of flatten()).
double q_loss_and_gradient(const QuantumModelParams& p, const Matrix& x, std::span<const double> y,
                           std::span<const std::size_t> rows, std::span<double> grad,
                           GradientMethod method = GradientMethod::ParameterShift);

/// Convenience: gradient over every row.
std::vector<double> q_gradient(const QuantumModelParams& p, const Matrix& x,
                               std::span<const double> y,
                               GradientMethod method = GradientMethod::ParameterShift);

struct QuantumTrainResult {
  QuantumModelParams params;
  TrainTrace trace;
};

QuantumTrainResult train_quantum(const TrainingData& data, const OptimizerConfig& config,
                                 std::uint64_t init_seed, const BatchSchedule& schedule,
                                 GradientMethod method = GradientMethod::Adjoint);

/// Same, with init and batch seeds derived from one seed.
QuantumTrainResult train_quantum(const TrainingData& data, const OptimizerConfig& config,
                                 std::uint64_t seed,
                                 GradientMethod method = GradientMethod::Adjoint);

/// One line: comma-separated flatten() values.
void write_quantum_csv(const QuantumModelParams& p, const std::filesystem::path& path);

}  // namespace qsarbench
