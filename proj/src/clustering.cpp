// SPDX-License-Identifier: Apache-2.0
#include "qsarbench/clustering.hpp"

#include <algorithm>

#include "qsarbench/error.hpp"
#include "qsarbench/rng.hpp"

namespace qsarbench {

std::size_t Clustering::item_count() const noexcept {
  std::size_t total = 0;
  for (const auto& c : clusters) total += c.size();
  return total;
}

std::vector<std::vector<std::size_t>> similarity_neighbors(std::span<const Fingerprint> fps,
                                                           double cutoff) {
  std::vector<std::vector<std::size_t>> neighbors(fps.size());
  for (std::size_t i = 0; i < fps.size(); ++i) {
    for (std::size_t j = i + 1; j < fps.size(); ++j) {
      if (tanimoto(fps[i], fps[j]) >= cutoff) {
        neighbors[i].push_back(j);
        neighbors[j].push_back(i);
      }
    }
  }
  for (auto& n : neighbors) std::sort(n.begin(), n.end());
  return neighbors;
}

Clustering butina_cluster(std::span<const Fingerprint> fps, double cutoff) {
  if (fps.empty()) throw Error(ErrorCode::EmptyInput, "no fingerprints to cluster");
  if (!(cutoff > 0.0 && cutoff <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "cutoff must lie in (0, 1]");
  }
  const auto neighbors = similarity_neighbors(fps, cutoff);
  const std::size_t count = fps.size();
  std::vector<std::size_t> free_neighbors(count);
  for (std::size_t i = 0; i < count; ++i) free_neighbors[i] = neighbors[i].size();
  std::vector<bool> assigned(count, false);

  Clustering result;
  result.cutoff = cutoff;
  std::size_t remaining = count;
  while (remaining > 0) {
    std::size_t centroid = count;
    for (std::size_t i = 0; i < count; ++i) {
      if (assigned[i]) continue;
      if (centroid == count || free_neighbors[i] > free_neighbors[centroid]) centroid = i;
    }
    std::vector<std::size_t> members{centroid};
    for (std::size_t j : neighbors[centroid]) {
      if (!assigned[j]) members.push_back(j);
    }
    for (std::size_t m : members) {
      assigned[m] = true;
      --remaining;
    }
    for (std::size_t m : members) {
      for (std::size_t j : neighbors[m]) --free_neighbors[j];
    }
    result.clusters.push_back(std::move(members));
  }
  std::stable_sort(result.clusters.begin(), result.clusters.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return result;
}

SplitPlan cluster_training_plan(const Clustering& clustering, std::size_t min_size, int k,
                                std::uint64_t seed) {
  if (k < 1 || k > kMaxPerCluster) {
    throw Error(ErrorCode::InvalidArgument, "samples per cluster must lie in 1..7");
  }
  SplitPlan plan;
  plan.seed = seed;
  std::size_t large = 0;
  for (std::size_t c = 0; c < clustering.clusters.size(); ++c) {
    const auto& members = clustering.clusters[c];
    if (members.size() < min_size) {
      plan.test_indices.insert(plan.test_indices.end(), members.begin(), members.end());
      continue;
    }
    ++large;
    Rng rng(derive_seed(seed, "cluster", c));
    const auto picked = rng.sample(members.size(), static_cast<std::size_t>(k));
    std::vector<bool> chosen(members.size(), false);
    for (std::size_t p : picked) chosen[p] = true;
    for (std::size_t i = 0; i < members.size(); ++i) {
      (chosen[i] ? plan.train_indices : plan.test_indices).push_back(members[i]);
    }
  }
  if (large == 0) {
    throw Error(ErrorCode::NoLargeClusters,
                "no cluster has at least " + std::to_string(min_size) + " members");
  }
  std::sort(plan.train_indices.begin(), plan.train_indices.end());
  std::sort(plan.test_indices.begin(), plan.test_indices.end());
  const std::size_t total = plan.train_indices.size() + plan.test_indices.size();
  plan.train_fraction = static_cast<double>(plan.train_indices.size()) / static_cast<double>(total);
  return plan;
}

}  // namespace qsarbench
