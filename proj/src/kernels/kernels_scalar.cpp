// SPDX-License-Identifier: Apache-2.0
#include <bit>

#include "qsarbench/kernels.hpp"

namespace qsarbench::kernels {
namespace {

void apply_1q_scalar(cplx* amps, std::size_t size, std::size_t stride, const Mat2& u) noexcept {
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + stride];
      amps[i] = u.m00 * a0 + u.m01 * a1;
      amps[i + stride] = u.m10 * a0 + u.m11 * a1;
    }
  }
}

double norm2_scalar(const cplx* amps, std::size_t size) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < size; ++i) sum += std::norm(amps[i]);
  return sum;
}

PopcountPair popcount_and_or_scalar(const std::uint64_t* a, const std::uint64_t* b,
                                    std::size_t words) noexcept {
  PopcountPair out{0, 0};
  for (std::size_t i = 0; i < words; ++i) {
    out.both += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    out.either += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  }
  return out;
}

double dot_scalar(const double* x, const double* y, std::size_t n) noexcept {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) noexcept {
  for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void rotate_scalar(double* x, double* y, std::size_t n, double c, double s) noexcept {
  for (std::size_t i = 0; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

constexpr KernelTable kScalar{
    "scalar",      apply_1q_scalar, norm2_scalar, popcount_and_or_scalar,
    dot_scalar,    axpy_scalar,     rotate_scalar,
};

}  // namespace

const KernelTable& scalar_kernels() noexcept { return kScalar; }

}  // namespace qsarbench::kernels
