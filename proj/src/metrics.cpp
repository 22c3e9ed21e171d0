// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/metrics.hpp"

#include <cmath>

#include "qsarbench/error.hpp"

namespace qsarbench {

double accuracy(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "accuracy: lengths differ");
  if (pred.empty()) throw Error(ErrorCode::EmptyInput, "accuracy of an empty sequence");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) hits += pred[i] == truth[i] ? 1 : 0;
  return static_cast<double>(hits) / static_cast<double>(pred.size());
}

double recall(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw Error(ErrorCode::LengthMismatch, "recall: lengths differ");
  std::size_t tp = 0;
  std::size_t fn = 0;
  for (std::size_t i = 0; i < pred.size(); ++i) {
    if (truth[i] != 1) continue;
    if (pred[i] == 1) {
      ++tp;
    } else {
      ++fn;
    }
  }
  if (tp + fn == 0) throw Error(ErrorCode::NoPositives, "recall is undefined without positives");
  return static_cast<double>(tp) / static_cast<double>(tp + fn);
}

double mean(std::span<const double> values) {
  if (values.empty()) throw Error(ErrorCode::EmptyInput, "mean of an empty sequence");
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

double stddev(std::span<const double> values) {
  const double mu = mean(values);
  double sum = 0.0;
  for (double v : values) sum += (v - mu) * (v - mu);
  return std::sqrt(sum / static_cast<double>(values.size()));
}

}  // namespace qsarbench
