// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qsarbench/dataset.hpp"
#include "qsarbench/fingerprint.hpp"

namespace qsarbench {

/// Clusters ordered by size descending (creation order on ties); the first
/// member of each cluster is its centroid.
struct Clustering {
  std::vector<std::vector<std::size_t>> clusters;
  double cutoff = 0.65;

  std::size_t item_count() const noexcept;
};

inline constexpr double kDefaultCutoff = 0.65;
inline constexpr std::size_t kLargeClusterMin = 21;
inline constexpr int kMaxPerCluster = 7;

/// Neighbour lists {j != i : tanimoto(i, j) >= cutoff}, ascending.
std::vector<std::vector<std::size_t>> similarity_neighbors(std::span<const Fingerprint> fps,
                                                           double cutoff);

/// Butina: repeatedly take the unassigned item with the most unassigned
/// neighbours (lowest index on ties) and claim it with those neighbours.
Clustering butina_cluster(std::span<const Fingerprint> fps, double cutoff = kDefaultCutoff);

/// k random members from every cluster of size >= min_size go to training;
/// everything else is test. Indices are returned sorted.
SplitPlan cluster_training_plan(const Clustering& clustering, std::size_t min_size, int k,
                                std::uint64_t seed);

}  // namespace qsarbench
