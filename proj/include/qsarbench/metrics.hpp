// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>
#include <vector>

namespace qsarbench {

/// Fraction of positions where pred == truth. Labels are +1 / -1.
double accuracy(std::span<const int> pred, std::span<const int> truth);

/// TP / (TP + FN) with +1 as the positive class. Throws NoPositives when
/// truth has no +1 entries.
double recall(std::span<const int> pred, std::span<const int> truth);

/// Zero-threshold decision shared by both classifiers: score >= 0 -> +1.
constexpr int predict_label(double score) noexcept { return score >= 0.0 ? 1 : -1; }

double mean(std::span<const double> values);

/// Population standard deviation (divisor n); 0 for a single value.
double stddev(std::span<const double> values);

}  // namespace qsarbench
