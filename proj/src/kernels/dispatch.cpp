// SPDX-License-Identifier: Apache-2.0
#include <cstdlib>
#include <string_view>

#include "qsarbench/kernels.hpp"

namespace qsarbench::kernels {

const KernelTable& active() noexcept {
  static const KernelTable& table = []() -> const KernelTable& {
    const char* forced = std::getenv("QSARBENCH_SIMD");
    if (forced != nullptr && std::string_view(forced) == "scalar") return scalar_kernels();
    if (const KernelTable* avx2 = avx2_kernels()) return *avx2;
    return scalar_kernels();
  }();
  return table;
}

}  // namespace qsarbench::kernels
