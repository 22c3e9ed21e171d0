// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "qsarbench/clustering.hpp"
#include "qsarbench/error.hpp"
#include "qsarbench/rng.hpp"
#include "support/families.hpp"

using namespace qsarbench;

namespace {

Fingerprint bits_of(std::initializer_list<std::size_t> bits) {
  Fingerprint fp(512);
  for (std::size_t b : bits) fp.set(b);
  return fp;
}

Clustering sized(std::initializer_list<std::size_t> sizes) {
  Clustering c;
  std::size_t next = 0;
  for (std::size_t s : sizes) {
    std::vector<std::size_t> members(s);
    for (auto& m : members) m = next++;
    c.clusters.push_back(members);
  }
  return c;
}

void expect_partition(const Clustering& c, std::size_t count) {
  std::vector<std::size_t> all;
  for (const auto& cl : c.clusters) {
    EXPECT_FALSE(cl.empty());
    all.insert(all.end(), cl.begin(), cl.end());
  }
  std::sort(all.begin(), all.end());
  ASSERT_EQ(all.size(), count);
  for (std::size_t i = 0; i < count; ++i) EXPECT_EQ(all[i], i);
}

// Independent Butina on a precomputed similarity table.
std::vector<std::vector<std::size_t>> reference_butina(std::span<const Fingerprint> fps, double cutoff) {
  const std::size_t n = fps.size();
  std::vector<std::vector<bool>> near(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) near[i][j] = i != j && tanimoto(fps[i], fps[j]) >= cutoff;
  }
  std::vector<bool> taken(n, false);
  std::vector<std::vector<std::size_t>> clusters;
  for (;;) {
    std::size_t best = n, best_count = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (taken[i]) continue;
      std::size_t cnt = 0;
      for (std::size_t j = 0; j < n; ++j) cnt += !taken[j] && near[i][j];
      if (best == n || cnt > best_count) best = i, best_count = cnt;
    }
    if (best == n) break;
    std::vector<std::size_t> cl{best};
    taken[best] = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (!taken[j] && near[best][j]) cl.push_back(j), taken[j] = true;
    }
    clusters.push_back(cl);
  }
  std::stable_sort(clusters.begin(), clusters.end(),
                   [](const auto& a, const auto& b) { return a.size() > b.size(); });
  return clusters;
}

}  // namespace

TEST(Butina, IdenticalFingerprintsFormOneCluster) {
  const std::vector<Fingerprint> fps(10, bits_of({1, 5, 9}));
  const auto c = butina_cluster(fps, 0.65);
  ASSERT_EQ(c.clusters.size(), 1U);
  EXPECT_EQ(c.clusters[0].size(), 10U);
  EXPECT_EQ(c.clusters[0][0], 0U);
}

TEST(Butina, DisjointGroups) {
  std::vector<Fingerprint> fps{bits_of({1, 2, 3}), bits_of({100, 101}), bits_of({1, 2, 3, 4}),
                               bits_of({100, 101, 102}), bits_of({2, 3, 4})};
  const auto c = butina_cluster(fps, 0.5);
  ASSERT_EQ(c.clusters.size(), 2U);
  std::set<std::size_t> a(c.clusters[0].begin(), c.clusters[0].end());
  std::set<std::size_t> b(c.clusters[1].begin(), c.clusters[1].end());
  EXPECT_EQ(a, (std::set<std::size_t>{0, 2, 4}));
  EXPECT_EQ(b, (std::set<std::size_t>{1, 3}));
  EXPECT_EQ(c.clusters[0][0], 0U);  // three-way tie on neighbour count
}

TEST(Butina, DistinctFingerprintsAtCutoffOne) {
  std::vector<Fingerprint> fps;
  for (std::size_t i = 0; i < 12; ++i) fps.push_back(bits_of({i, i + 1}));
  const auto c = butina_cluster(fps, 1.0);
  EXPECT_EQ(c.clusters.size(), 12U);
}

TEST(Butina, Errors) {
  try {
    butina_cluster(std::span<const Fingerprint>{}, 0.5);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EmptyInput);
  }
  const std::vector<Fingerprint> fps(2, bits_of({1}));
  EXPECT_THROW(butina_cluster(fps, 0.0), Error);
  EXPECT_THROW(butina_cluster(fps, 1.5), Error);
}

TEST(Butina, MatchesReferenceAndInvariants) {
  Rng rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const auto fps = oracle::random_family(rng, 5 + rng.below(60));
    const double cutoff = rng.uniform(0.2, 0.9);
    const auto c = butina_cluster(fps, cutoff);
    expect_partition(c, fps.size());
    EXPECT_EQ(c.clusters, reference_butina(fps, cutoff));
    for (std::size_t i = 1; i < c.clusters.size(); ++i) {
      EXPECT_GE(c.clusters[i - 1].size(), c.clusters[i].size());
    }
    for (const auto& cl : c.clusters) {
      for (std::size_t m = 1; m < cl.size(); ++m) EXPECT_GE(tanimoto(fps[cl[0]], fps[cl[m]]), cutoff);
    }
  }
}

// Holds on these sparse noisy-prototype sets; see the counterexample below.
TEST(Butina, LoweringCutoffNeverAddsClustersOnNoisyPrototypes) {
  Rng rng(47);
  int checked = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const auto fps = oracle::random_family(rng, 10 + rng.below(50));
    std::size_t previous = fps.size() + 1;
    for (double cutoff = 0.95; cutoff > 0.1; cutoff -= 0.05) {
      const std::size_t count = butina_cluster(fps, cutoff).clusters.size();
      EXPECT_LE(count, previous) << "trial " << trial << " cutoff " << cutoff;
      previous = count;
      ++checked;
    }
  }
  EXPECT_GE(checked, 100);
}

// Greedy centroid choice is not monotone in general: the extra edge B-C at
// the lower cutoff lets B claim C and E, stranding A and D as singletons.
TEST(Butina, GreedyCounterexampleToMonotonicity) {
  const std::vector<Fingerprint> fps{bits_of({0}), bits_of({5}), bits_of({1, 2, 3, 5}),
                                     bits_of({1, 3}), bits_of({0, 5})};
  const auto strict = butina_cluster(fps, 0.5);
  const auto loose = butina_cluster(fps, 0.25);
  EXPECT_EQ(strict.clusters.size(), 2U);
  EXPECT_EQ(loose.clusters.size(), 3U);
  EXPECT_EQ(loose.clusters[0], (std::vector<std::size_t>{1, 2, 4}));
}

TEST(Butina, NeighborLists) {
  std::vector<Fingerprint> fps{bits_of({1, 2}), bits_of({1, 2, 3}), bits_of({9})};
  const auto nb = similarity_neighbors(fps, 0.6);
  EXPECT_EQ(nb[0], (std::vector<std::size_t>{1}));
  EXPECT_EQ(nb[1], (std::vector<std::size_t>{0}));
  EXPECT_TRUE(nb[2].empty());
}

TEST(ClusterPlan, Examples) {
  const auto one = cluster_training_plan(sized({25}), 21, 1, 5);
  EXPECT_EQ(one.train_indices.size(), 1U);
  EXPECT_EQ(one.test_indices.size(), 24U);

  const auto three = cluster_training_plan(sized({30, 22, 5}), 21, 3, 5);
  EXPECT_EQ(three.train_indices.size(), 6U);
  EXPECT_EQ(three.test_indices.size(), 51U);
  std::size_t from_first = 0, from_second = 0;
  for (auto i : three.train_indices) {
    EXPECT_LT(i, 52U);  // the 5-cluster holds indices 52..56
    (i < 30 ? from_first : from_second)++;
  }
  EXPECT_EQ(from_first, 3U);
  EXPECT_EQ(from_second, 3U);
  EXPECT_TRUE(std::is_sorted(three.train_indices.begin(), three.train_indices.end()));
  EXPECT_EQ(three, cluster_training_plan(sized({30, 22, 5}), 21, 3, 5));
  EXPECT_NE(three.train_indices, cluster_training_plan(sized({30, 22, 5}), 21, 3, 6).train_indices);
}

TEST(ClusterPlan, Errors) {
  try {
    cluster_training_plan(sized({20, 20, 3}), 21, 2, 1);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoLargeClusters);
  }
  EXPECT_THROW(cluster_training_plan(sized({30}), 21, 0, 1), Error);
  EXPECT_THROW(cluster_training_plan(sized({30}), 21, 8, 1), Error);
}

TEST(ClusterPlan, CoversEveryIndex) {
  Rng rng(8);
  for (int trial = 0; trial < 100; ++trial) {
    Clustering c;
    std::size_t next = 0;
    const std::size_t groups = 1 + rng.below(6);
    for (std::size_t g = 0; g < groups; ++g) {
      std::vector<std::size_t> members(1 + rng.below(40));
      for (auto& m : members) m = next++;
      c.clusters.push_back(members);
    }
    c.clusters.push_back(std::vector<std::size_t>(21));
    for (auto& m : c.clusters.back()) m = next++;
    const int k = 1 + static_cast<int>(rng.below(7));
    const auto plan = cluster_training_plan(c, 21, k, trial);
    std::vector<std::size_t> all(plan.train_indices);
    all.insert(all.end(), plan.test_indices.begin(), plan.test_indices.end());
    std::sort(all.begin(), all.end());
    ASSERT_EQ(all.size(), next);
    for (std::size_t i = 0; i < next; ++i) EXPECT_EQ(all[i], i);
    std::size_t large = 0;
    for (const auto& cl : c.clusters) large += cl.size() >= 21;
    EXPECT_EQ(plan.train_indices.size(), large * static_cast<std::size_t>(k));
  }
}
