// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <array>
#include <set>

#include "qsarbench/rng.hpp"

using namespace qsarbench;

namespace {

// Textbook xoshiro256** step on an explicit state.
std::uint64_t reference_next(std::array<std::uint64_t, 4>& s) {
  auto rotl = [](std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); };
  const std::uint64_t result = rotl(s[1] * 5, 7) * 9;
  const std::uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

}  // namespace

TEST(Rng, SplitMixKnownOutputs) {
  // SplitMix64 seeded with 0: first four outputs.
  EXPECT_EQ(mix64(1 * kGoldenGamma), 0xe220a8397b1dcdafULL);
  EXPECT_EQ(mix64(2 * kGoldenGamma), 0x6e789e6aa1b965f4ULL);
  EXPECT_EQ(mix64(3 * kGoldenGamma), 0x06c45d188009454fULL);
  EXPECT_EQ(mix64(4 * kGoldenGamma), 0xf88bb8a8724c81ecULL);
}

TEST(Rng, FnvKnownValues) {
  EXPECT_EQ(tag_hash(""), 0xcbf29ce484222325ULL);
  EXPECT_EQ(tag_hash("a"), 0xaf63dc4c8601ec8cULL);
}

TEST(Rng, MatchesReferenceXoshiro) {
  std::array<std::uint64_t, 4> state{0xe220a8397b1dcdafULL, 0x6e789e6aa1b965f4ULL,
                                     0x06c45d188009454fULL, 0xf88bb8a8724c81ecULL};
  Rng rng(0);
  for (int i = 0; i < 1000; ++i) ASSERT_EQ(rng.next(), reference_next(state)) << i;
}

TEST(Rng, DerivedSeedsAreDistinctAndStable) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) {
    EXPECT_TRUE(seen.insert(derive_seed(42, "split", i)).second);
  }
  EXPECT_NE(derive_seed(42, "split", 0), derive_seed(42, "rep", 0));
  EXPECT_NE(derive_seed(42, "split", 0), derive_seed(43, "split", 0));
  static_assert(derive_seed(1, "x", 2) == derive_seed(1, "x", 2));
}

TEST(Rng, UniformRange) {
  Rng rng(7);
  double sum = 0;
  for (int i = 0; i < 100000; ++i) {
    const double u = rng.uniform();
    ASSERT_GE(u, 0.0);
    ASSERT_LT(u, 1.0);
    sum += u;
  }
  EXPECT_NEAR(sum / 100000, 0.5, 0.01);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.uniform(-2.0, 3.0);
    ASSERT_GE(v, -2.0);
    ASSERT_LT(v, 3.0);
  }
}

TEST(Rng, BelowIsUniform) {
  Rng rng(11);
  constexpr std::uint64_t kBins = 7;
  constexpr int kDraws = 70000;
  std::array<int, kBins> counts{};
  for (int i = 0; i < kDraws; ++i) {
    const auto v = rng.below(kBins);
    ASSERT_LT(v, kBins);
    ++counts[v];
  }
  double chi2 = 0;
  const double expected = static_cast<double>(kDraws) / kBins;
  for (int c : counts) chi2 += (c - expected) * (c - expected) / expected;
  EXPECT_LT(chi2, 22.46);  // 6 dof, p = 0.001
  EXPECT_EQ(rng.below(0), 0U);
  EXPECT_EQ(rng.below(1), 0U);
}

TEST(Rng, SampleAndShuffle) {
  Rng rng(3);
  for (std::size_t pop = 0; pop < 40; ++pop) {
    for (std::size_t k = 0; k <= pop + 2; ++k) {
      const auto s = rng.sample(pop, k);
      EXPECT_EQ(s.size(), std::min(k, pop));
      std::set<std::size_t> unique(s.begin(), s.end());
      EXPECT_EQ(unique.size(), s.size());
      for (auto v : s) EXPECT_LT(v, pop);
    }
  }
  std::vector<int> items{1, 2, 3, 4, 5, 6, 7, 8};
  auto copy = items;
  Rng(5).shuffle(std::span<int>(items));
  Rng(5).shuffle(std::span<int>(copy));
  EXPECT_EQ(items, copy);
  std::sort(items.begin(), items.end());
  EXPECT_EQ(items, (std::vector<int>{1, 2, 3, 4, 5, 6, 7, 8}));
}
