// SPDX-License-Identifier: Apache-2.0
//
// Data-parallel inner loops. Every kernel has a scalar reference and, on
// x86-64, an AVX2+FMA variant. The active table is picked once at startup from
// CPUID; QSARBENCH_SIMD=scalar forces the reference path.
#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <string_view>

namespace qsarbench::kernels {

using cplx = std::complex<double>;

/// Row-major 2x2 complex matrix acting on one qubit.
struct Mat2 {
  cplx m00, m01, m10, m11;
};

struct PopcountPair {
  std::uint64_t both;    // |a & b|
  std::uint64_t either;  // |a | b|
};

struct KernelTable {
  std::string_view name;

  /// For every index pair (i, i + stride) with bit `stride` of i clear:
  /// (a_i, a_{i+stride}) <- U (a_i, a_{i+stride}). `size` is a power of two.
  void (*apply_1q)(cplx* amps, std::size_t size, std::size_t stride, const Mat2& u) noexcept;

  /// Sum of |a_i|^2.
  double (*norm2)(const cplx* amps, std::size_t size) noexcept;

  PopcountPair (*popcount_and_or)(const std::uint64_t* a, const std::uint64_t* b,
                                  std::size_t words) noexcept;

  double (*dot)(const double* x, const double* y, std::size_t n) noexcept;

  /// y += a * x
  void (*axpy)(double a, const double* x, double* y, std::size_t n) noexcept;

  /// Givens rotation of two rows: x <- c x - s y, y <- s x + c y.
  void (*rotate)(double* x, double* y, std::size_t n, double c, double s) noexcept;
};

const KernelTable& scalar_kernels() noexcept;

/// nullptr when the build target or the running CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels() noexcept;

/// Table used by the library; resolved once.
const KernelTable& active() noexcept;

}  // namespace qsarbench::kernels
