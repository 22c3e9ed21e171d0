// SPDX-License-Identifier: Apache-2.0
//
// AVX2 + FMA variants. Functions carry target attributes instead of the whole
// file being built with -mavx2, so no AVX encodings leak into shared inline
// code that a non-AVX2 host might execute.
#include <bit>

#include "qsarbench/kernels.hpp"

#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
#define QSARBENCH_HAVE_AVX2_KERNELS 1
#include <immintrin.h>
#endif

namespace qsarbench::kernels {

#if QSARBENCH_HAVE_AVX2_KERNELS

#define QSARBENCH_AVX2 __attribute__((target("avx2,fma")))

namespace {

QSARBENCH_AVX2 inline double hsum(__m256d v) noexcept {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

QSARBENCH_AVX2 void apply_1q_avx2(cplx* amps, std::size_t size, std::size_t stride,
                                  const Mat2& u) noexcept {
  if (stride == 1) {
    // Pairs are adjacent; one register holds both halves of a pair.
    for (std::size_t i = 0; i < size; i += 2) {
      const cplx a0 = amps[i];
      const cplx a1 = amps[i + 1];
      amps[i] = u.m00 * a0 + u.m01 * a1;
      amps[i + 1] = u.m10 * a0 + u.m11 * a1;
    }
    return;
  }
  auto* d = reinterpret_cast<double*>(amps);
  const __m256d u00r = _mm256_set1_pd(u.m00.real()), u00i = _mm256_set1_pd(u.m00.imag());
  const __m256d u01r = _mm256_set1_pd(u.m01.real()), u01i = _mm256_set1_pd(u.m01.imag());
  const __m256d u10r = _mm256_set1_pd(u.m10.real()), u10i = _mm256_set1_pd(u.m10.imag());
  const __m256d u11r = _mm256_set1_pd(u.m11.real()), u11i = _mm256_set1_pd(u.m11.imag());
  for (std::size_t base = 0; base < size; base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; i += 2) {
      double* p0 = d + 2 * i;
      double* p1 = d + 2 * (i + stride);
      const __m256d a0 = _mm256_loadu_pd(p0);
      const __m256d a1 = _mm256_loadu_pd(p1);
      const __m256d a0s = _mm256_permute_pd(a0, 0b0101);
      const __m256d a1s = _mm256_permute_pd(a1, 0b0101);

      const __m256d r0 = _mm256_fmadd_pd(a1, u01r, _mm256_mul_pd(a0, u00r));
      const __m256d t0 = _mm256_fmadd_pd(a1s, u01i, _mm256_mul_pd(a0s, u00i));
      const __m256d r1 = _mm256_fmadd_pd(a1, u11r, _mm256_mul_pd(a0, u10r));
      const __m256d t1 = _mm256_fmadd_pd(a1s, u11i, _mm256_mul_pd(a0s, u10i));

      _mm256_storeu_pd(p0, _mm256_addsub_pd(r0, t0));
      _mm256_storeu_pd(p1, _mm256_addsub_pd(r1, t1));
    }
  }
}

QSARBENCH_AVX2 double norm2_avx2(const cplx* amps, std::size_t size) noexcept {
  const auto* d = reinterpret_cast<const double*>(amps);
  const std::size_t n = 2 * size;
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    const __m256d x0 = _mm256_loadu_pd(d + i);
    const __m256d x1 = _mm256_loadu_pd(d + i + 4);
    acc0 = _mm256_fmadd_pd(x0, x0, acc0);
    acc1 = _mm256_fmadd_pd(x1, x1, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += d[i] * d[i];
  return sum;
}

// Mula's nibble-lookup population count.
QSARBENCH_AVX2 inline __m256i popcount_bytes(__m256i v) noexcept {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,  //
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  const __m256i lo = _mm256_and_si256(v, low_mask);
  const __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  const __m256i counts =
      _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

QSARBENCH_AVX2 PopcountPair popcount_and_or_avx2(const std::uint64_t* a, const std::uint64_t* b,
                                                 std::size_t words) noexcept {
  __m256i both = _mm256_setzero_si256();
  __m256i either = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    const __m256i va = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(a + i));
    const __m256i vb = _mm256_loadu_si256(reinterpret_cast<const __m256i*>(b + i));
    both = _mm256_add_epi64(both, popcount_bytes(_mm256_and_si256(va, vb)));
    either = _mm256_add_epi64(either, popcount_bytes(_mm256_or_si256(va, vb)));
  }
  alignas(32) std::uint64_t lanes_both[4];
  alignas(32) std::uint64_t lanes_either[4];
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes_both), both);
  _mm256_store_si256(reinterpret_cast<__m256i*>(lanes_either), either);
  PopcountPair out{lanes_both[0] + lanes_both[1] + lanes_both[2] + lanes_both[3],
                   lanes_either[0] + lanes_either[1] + lanes_either[2] + lanes_either[3]};
  for (; i < words; ++i) {
    out.both += static_cast<std::uint64_t>(std::popcount(a[i] & b[i]));
    out.either += static_cast<std::uint64_t>(std::popcount(a[i] | b[i]));
  }
  return out;
}

QSARBENCH_AVX2 double dot_avx2(const double* x, const double* y, std::size_t n) noexcept {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    acc0 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc0);
    acc1 = _mm256_fmadd_pd(_mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4), acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += x[i] * y[i];
  return sum;
}

QSARBENCH_AVX2 void axpy_avx2(double a, const double* x, double* y, std::size_t n) noexcept {
  const __m256d va = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += a * x[i];
}

QSARBENCH_AVX2 void rotate_avx2(double* x, double* y, std::size_t n, double c,
                                double s) noexcept {
  const __m256d vc = _mm256_set1_pd(c);
  const __m256d vs = _mm256_set1_pd(s);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xi = _mm256_loadu_pd(x + i);
    const __m256d yi = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(x + i, _mm256_fmsub_pd(vc, xi, _mm256_mul_pd(vs, yi)));
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vs, xi, _mm256_mul_pd(vc, yi)));
  }
  for (; i < n; ++i) {
    const double xi = x[i];
    const double yi = y[i];
    x[i] = c * xi - s * yi;
    y[i] = s * xi + c * yi;
  }
}

constexpr KernelTable kAvx2{
    "avx2",   apply_1q_avx2, norm2_avx2,  popcount_and_or_avx2,
    dot_avx2, axpy_avx2,     rotate_avx2,
};

}  // namespace

const KernelTable* avx2_kernels() noexcept {
  static const bool supported = [] {
    __builtin_cpu_init();
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  }();
  return supported ? &kAvx2 : nullptr;
}

#else

const KernelTable* avx2_kernels() noexcept { return nullptr; }

#endif

}  // namespace qsarbench::kernels
