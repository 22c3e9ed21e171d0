// SPDX-License-Identifier: Apache-2.0
#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "qsarbench/kernels.hpp"
#include "qsarbench/rng.hpp"

using namespace qsarbench;
using kernels::cplx;
using kernels::KernelTable;

namespace {

const KernelTable* simd() {
  const KernelTable* t = kernels::avx2_kernels();
  return t;
}

std::vector<cplx> random_cplx(Rng& rng, std::size_t n) {
  std::vector<cplx> v(n);
  for (auto& x : v) x = cplx(rng.uniform(-1, 1), rng.uniform(-1, 1));
  return v;
}

std::vector<double> random_real(Rng& rng, std::size_t n) {
  std::vector<double> v(n);
  for (auto& x : v) x = rng.uniform(-1, 1);
  return v;
}

}  // namespace

TEST(Kernels, ActiveTableIsOneOfTheVariants) {
  const auto& a = kernels::active();
  EXPECT_TRUE(&a == &kernels::scalar_kernels() || &a == kernels::avx2_kernels());
}

TEST(Kernels, ScalarApply1qMatchesDefinition) {
  Rng rng(1);
  const kernels::Mat2 u{cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, -0.4), cplx(0.05, 0.9)};
  for (std::size_t size : {2U, 4U, 16U}) {
    for (std::size_t stride = 1; stride < size; stride <<= 1) {
      auto v = random_cplx(rng, size);
      auto expected = v;
      for (std::size_t i = 0; i < size; ++i) {
        if (i & stride) continue;
        expected[i] = u.m00 * v[i] + u.m01 * v[i + stride];
        expected[i + stride] = u.m10 * v[i] + u.m11 * v[i + stride];
      }
      kernels::scalar_kernels().apply_1q(v.data(), size, stride, u);
      for (std::size_t i = 0; i < size; ++i) EXPECT_LT(std::abs(v[i] - expected[i]), 1e-15);
    }
  }
}

TEST(Kernels, SimdMatchesScalarApply1q) {
  if (!simd()) GTEST_SKIP() << "no AVX2/FMA on this CPU";
  Rng rng(2);
  const kernels::Mat2 u{cplx(0.3, 0.1), cplx(-0.2, 0.5), cplx(0.7, -0.4), cplx(0.05, 0.9)};
  for (int n = 1; n <= 9; ++n) {
    const std::size_t size = std::size_t{1} << n;
    for (std::size_t stride = 1; stride < size; stride <<= 1) {
      auto a = random_cplx(rng, size);
      auto b = a;
      kernels::scalar_kernels().apply_1q(a.data(), size, stride, u);
      simd()->apply_1q(b.data(), size, stride, u);
      for (std::size_t i = 0; i < size; ++i) ASSERT_LT(std::abs(a[i] - b[i]), 1e-14);
    }
  }
}

TEST(Kernels, SimdMatchesScalarReductions) {
  if (!simd()) GTEST_SKIP() << "no AVX2/FMA on this CPU";
  Rng rng(3);
  for (std::size_t n : {0U, 1U, 2U, 3U, 5U, 8U, 17U, 64U, 255U, 512U}) {
    const auto c = random_cplx(rng, n);
    EXPECT_NEAR(simd()->norm2(c.data(), n), kernels::scalar_kernels().norm2(c.data(), n), 1e-12);

    const auto x = random_real(rng, n);
    const auto y = random_real(rng, n);
    EXPECT_NEAR(simd()->dot(x.data(), y.data(), n), kernels::scalar_kernels().dot(x.data(), y.data(), n),
                1e-12);

    auto ya = y, yb = y;
    kernels::scalar_kernels().axpy(0.37, x.data(), ya.data(), n);
    simd()->axpy(0.37, x.data(), yb.data(), n);
    for (std::size_t i = 0; i < n; ++i) EXPECT_NEAR(ya[i], yb[i], 1e-15);

    auto xa = x, xb = x;
    ya = y;
    yb = y;
    kernels::scalar_kernels().rotate(xa.data(), ya.data(), n, 0.8, 0.6);
    simd()->rotate(xb.data(), yb.data(), n, 0.8, 0.6);
    for (std::size_t i = 0; i < n; ++i) {
      EXPECT_NEAR(xa[i], xb[i], 1e-15);
      EXPECT_NEAR(ya[i], yb[i], 1e-15);
    }
  }
}

TEST(Kernels, PopcountMatchesBuiltin) {
  Rng rng(4);
  std::vector<const KernelTable*> tables{&kernels::scalar_kernels()};
  if (simd()) tables.push_back(simd());
  for (std::size_t words : {0U, 1U, 3U, 4U, 7U, 8U, 9U, 16U}) {
    std::vector<std::uint64_t> a(words), b(words);
    for (auto& w : a) w = rng.next();
    for (auto& w : b) w = rng.next() & rng.next();
    std::uint64_t both = 0, either = 0;
    for (std::size_t i = 0; i < words; ++i) {
      both += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
      either += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
    }
    for (const KernelTable* t : tables) {
      const auto r = t->popcount_and_or(a.data(), b.data(), words);
      EXPECT_EQ(r.both, both) << t->name;
      EXPECT_EQ(r.either, either) << t->name;
    }
  }
}
