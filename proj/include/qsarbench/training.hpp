// SPDX-License-Identifier: Apache-2.0
//
// Epoch loop shared by the classical and quantum trainers. Both consume the
// same BatchSchedule, so for a given (split, rep) they see identical batches.
#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qsarbench/dataset.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/matrix.hpp"
#include "qsarbench/metrics.hpp"
#include "qsarbench/optimizer.hpp"
#include "qsarbench/rng.hpp"

namespace qsarbench {

/// Feature rows with labels encoded as +1 / -1.
struct TrainingData {
  Matrix train_x;
  std::vector<double> train_y;
  Matrix test_x;
  std::vector<double> test_y;

  std::size_t features() const noexcept { return train_x.cols(); }
};

/// Splits `features` by `plan`; label 1 -> +1, 0 -> -1.
TrainingData make_training_data(const Matrix& features, std::span<const int> labels,
                                const SplitPlan& plan);

/// Seeded per-epoch permutations of the training rows.
class BatchSchedule {
 public:
  BatchSchedule(std::size_t train_size, std::size_t batch_size, int epochs, std::uint64_t seed);

  int epochs() const noexcept { return static_cast<int>(orders_.size()); }
  std::size_t batch_size() const noexcept { return batch_size_; }
  std::size_t train_size() const noexcept { return train_size_; }
  std::span<const std::size_t> epoch_order(int epoch) const { return orders_.at(epoch); }

 private:
  std::size_t train_size_;
  std::size_t batch_size_;
  std::vector<std::vector<std::size_t>> orders_;
};

struct EpochRecord {
  double train_loss = 0.0;      // size-weighted mean of batch losses
  double test_accuracy = 0.0;
  std::optional<double> test_recall;
};

struct TrainTrace {
  std::vector<EpochRecord> epochs;
  std::uint64_t batch_hash = 0;  // hash of every consumed batch, in order

  /// 1-based epoch of the first maximum test accuracy.
  int best_epoch() const;
  const EpochRecord& best() const { return epochs.at(static_cast<std::size_t>(best_epoch() - 1)); }
};

/// Running hash of the batch index sets handed to a trainer.
class BatchHasher {
 public:
  void add(std::span<const std::size_t> batch) noexcept {
    state_ = mix64(state_ ^ (0xb47c4ULL + batch.size()));
    for (std::size_t i : batch) state_ = mix64(state_ ^ (i + kGoldenGamma));
  }
  std::uint64_t value() const noexcept { return state_; }

 private:
  std::uint64_t state_ = 0x6a09e667f3bcc908ULL;
};

/// `Model` provides flatten(), assign(span), score(span) and
/// loss_and_gradient(x, y, rows, grad) -> batch loss.
template <typename Model>
TrainTrace run_training(Model& model, const TrainingData& data, const OptimizerConfig& config,
                        const BatchSchedule& schedule) {
  config.validate();
  if (schedule.epochs() != config.epochs || schedule.train_size() != data.train_x.rows()) {
    throw Error(ErrorCode::InvalidArgument, "batch schedule does not match the training set");
  }
  if (data.train_x.rows() == 0) throw Error(ErrorCode::EmptyTrainSet, "no training rows");

  std::vector<double> params = model.flatten();
  std::vector<double> grad(params.size(), 0.0);
  Adam adam(params.size(), config);
  BatchHasher hasher;

  std::vector<int> truth(data.test_y.size());
  for (std::size_t i = 0; i < truth.size(); ++i) truth[i] = data.test_y[i] > 0 ? 1 : -1;
  const bool has_positive = std::find(truth.begin(), truth.end(), 1) != truth.end();
  std::vector<int> pred(truth.size());

  TrainTrace trace;
  trace.epochs.reserve(static_cast<std::size_t>(config.epochs));
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    const auto order = schedule.epoch_order(epoch);
    double loss_sum = 0.0;
    for (std::size_t start = 0; start < order.size(); start += schedule.batch_size()) {
      const auto rows = order.subspan(start, std::min(schedule.batch_size(), order.size() - start));
      hasher.add(rows);
      const double loss = model.loss_and_gradient(data.train_x, data.train_y, rows, grad);
      loss_sum += loss * static_cast<double>(rows.size());
      adam.step(params, grad);
      model.assign(params);
    }
    EpochRecord record;
    record.train_loss = loss_sum / static_cast<double>(order.size());
    if (!truth.empty()) {
      for (std::size_t i = 0; i < truth.size(); ++i) {
        pred[i] = predict_label(model.score(data.test_x.row(i)));
      }
      record.test_accuracy = accuracy(pred, truth);
      if (has_positive) record.test_recall = recall(pred, truth);
    }
    trace.epochs.push_back(record);
  }
  trace.batch_hash = hasher.value();
  return trace;
}

}  // namespace qsarbench
