// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/training.hpp"

namespace qsarbench {

TrainingData make_training_data(const Matrix& features, std::span<const int> labels,
                                const SplitPlan& plan) {
  if (features.rows() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch, "feature rows and labels differ in length");
  }
  TrainingData data;
  data.train_x = features.select_rows(plan.train_indices);
  data.test_x = features.select_rows(plan.test_indices);
  for (std::size_t i : plan.train_indices) data.train_y.push_back(labels[i] == 1 ? 1.0 : -1.0);
  for (std::size_t i : plan.test_indices) data.test_y.push_back(labels[i] == 1 ? 1.0 : -1.0);
  return data;
}

BatchSchedule::BatchSchedule(std::size_t train_size, std::size_t batch_size, int epochs,
                             std::uint64_t seed)
    : train_size_(train_size), batch_size_(batch_size) {
  if (epochs < 1) throw Error(ErrorCode::InvalidArgument, "epochs must be >= 1");
  if (batch_size < 1) throw Error(ErrorCode::InvalidArgument, "batch size must be >= 1");
  orders_.resize(static_cast<std::size_t>(epochs));
  for (int e = 0; e < epochs; ++e) {
    auto& order = orders_[static_cast<std::size_t>(e)];
    order.resize(train_size);
    for (std::size_t i = 0; i < train_size; ++i) order[i] = i;
    Rng rng(derive_seed(seed, "epoch", static_cast<std::uint64_t>(e)));
    rng.shuffle(std::span<std::size_t>(order));
  }
}

int TrainTrace::best_epoch() const {
  if (epochs.empty()) throw Error(ErrorCode::InvariantViolation, "empty training trace");
  std::size_t best = 0;
  for (std::size_t i = 1; i < epochs.size(); ++i) {
    if (epochs[i].test_accuracy > epochs[best].test_accuracy) best = i;
  }
  return static_cast<int>(best) + 1;
}

}  // namespace qsarbench
