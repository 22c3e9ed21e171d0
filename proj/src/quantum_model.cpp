// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/quantum_model.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>

#include "qsarbench/csv.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/rng.hpp"

namespace qsarbench {
namespace {

struct QuantumModel {
  QuantumModelParams params;
  GradientMethod method;

  std::vector<double> flatten() const { return params.flatten(); }
  void assign(std::span<const double> flat) { params.assign(flat); }
  double score(std::span<const double> x) const { return q_forward(params, x); }
  double loss_and_gradient(const Matrix& x, std::span<const double> y,
                           std::span<const std::size_t> rows, std::span<double> grad) const {
    return q_loss_and_gradient(params, x, y, rows, grad, method);
  }
};

int qubits_for(std::size_t features) {
  if (features < 2 || !std::has_single_bit(features)) {
    throw Error(ErrorCode::NotPowerOfTwo,
                "quantum model needs 2^n features, got " + std::to_string(features));
  }
  return std::countr_zero(features);
}

}  // namespace

QuantumModelParams::QuantumModelParams(int qubits)
    : ansatz(qubits, 2), readout(static_cast<std::size_t>(qubits), 0.0) {
  if (count() != count_for(qubits)) {
    throw Error(ErrorCode::InvariantViolation, "quantum parameter count is not 7n");
  }
}

std::vector<double> QuantumModelParams::flatten() const {
  std::vector<double> flat(ansatz.angles);
  flat.insert(flat.end(), readout.begin(), readout.end());
  return flat;
}

void QuantumModelParams::assign(std::span<const double> flat) {
  if (flat.size() != count()) throw Error(ErrorCode::DimensionMismatch, "quantum parameter size");
  const auto split = static_cast<std::ptrdiff_t>(ansatz.count());
  std::copy(flat.begin(), flat.begin() + split, ansatz.angles.begin());
  std::copy(flat.begin() + split, flat.end(), readout.begin());
}

QuantumModelParams QuantumModelParams::initialize(int qubits, std::uint64_t seed) {
  QuantumModelParams p(qubits);
  Rng rng(seed);
  for (double& a : p.ansatz.angles) a = rng.uniform(0.0, 2.0 * std::numbers::pi);
  const double bound = 1.0 / std::sqrt(static_cast<double>(qubits));
  for (double& w : p.readout) w = rng.uniform(-bound, bound);
  return p;
}

std::string_view to_string(GradientMethod method) noexcept {
  return method == GradientMethod::Adjoint ? "adjoint" : "parameter-shift";
}

double q_forward(const QuantumModelParams& p, std::span<const double> x) {
  StateVector state = amplitude_embed(x).state;
  if (state.qubits() != p.qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "quantum model expects " +
                                                  std::to_string(std::size_t{1} << p.qubits()) +
                                                  " inputs, got " + std::to_string(x.size()));
  }
  run_ansatz(state, p.ansatz);
  const auto z = z_expectations(state);
  double score = 0.0;
  for (std::size_t q = 0; q < z.size(); ++q) score += p.readout[q] * z[q];
  return score;
}

double q_loss_and_gradient(const QuantumModelParams& p, const Matrix& x, std::span<const double> y,
                           std::span<const std::size_t> rows, std::span<double> grad,
                           GradientMethod method) {
  if (rows.empty()) throw Error(ErrorCode::EmptyBatch, "gradient of an empty batch");
  if (qubits_for(x.cols()) != p.qubits()) {
    throw Error(ErrorCode::DimensionMismatch, "quantum model input width");
  }
  if (grad.size() != p.count()) throw Error(ErrorCode::DimensionMismatch, "gradient buffer size");
  std::fill(grad.begin(), grad.end(), 0.0);
  const std::size_t n = static_cast<std::size_t>(p.qubits());
  const std::size_t angles = p.ansatz.count();
  const double inv_batch = 1.0 / static_cast<double>(rows.size());
  std::vector<double> upstream(n);

  double loss = 0.0;
  for (std::size_t r : rows) {
    const auto xr = x.row(r);
    StateVector state = amplitude_embed(xr).state;
    run_ansatz(state, p.ansatz);
    const auto z = z_expectations(state);
    double score = 0.0;
    for (std::size_t q = 0; q < n; ++q) score += p.readout[q] * z[q];
    const double residual = score - y[r];
    loss += residual * residual;
    const double d_score = 2.0 * residual * inv_batch;
    for (std::size_t q = 0; q < n; ++q) {
      grad[angles + q] += d_score * z[q];
      upstream[q] = d_score * p.readout[q];
    }
    const auto g = method == GradientMethod::Adjoint
                       ? adjoint_gradient_from_state(std::move(state), p.ansatz, upstream)
                       : parameter_shift_gradient(xr, p.ansatz, upstream);
    for (std::size_t j = 0; j < angles; ++j) grad[j] += g[j];
  }
  return loss * inv_batch;
}

std::vector<double> q_gradient(const QuantumModelParams& p, const Matrix& x,
                               std::span<const double> y, GradientMethod method) {
  std::vector<std::size_t> rows(x.rows());
  for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = i;
  std::vector<double> grad(p.count());
  q_loss_and_gradient(p, x, y, rows, grad, method);
  return grad;
}

QuantumTrainResult train_quantum(const TrainingData& data, const OptimizerConfig& config,
                                 std::uint64_t init_seed, const BatchSchedule& schedule,
                                 GradientMethod method) {
  config.validate();
  QuantumModel model{QuantumModelParams::initialize(qubits_for(data.features()), init_seed),
                     method};
  TrainTrace trace = run_training(model, data, config, schedule);
  return {std::move(model.params), std::move(trace)};
}

QuantumTrainResult train_quantum(const TrainingData& data, const OptimizerConfig& config,
                                 std::uint64_t seed, GradientMethod method) {
  config.validate();
  const BatchSchedule schedule(data.train_x.rows(), config.batch_size, config.epochs,
                               derive_seed(seed, "batches"));
  return train_quantum(data, config, derive_seed(seed, "init/quantum"), schedule, method);
}

void write_quantum_csv(const QuantumModelParams& p, const std::filesystem::path& path) {
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
