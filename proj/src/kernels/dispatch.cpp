#include <cstdlib>

#include "transnn/kernels.hpp"

namespace transnn::kernels {

#if defined(TRANSNN_HAVE_AVX2)
const KernelTable& avx2_table();
#endif
#if defined(TRANSNN_HAVE_NEON)
const KernelTable& neon_table();
#endif

const KernelTable* simd_table() {
#if defined(TRANSNN_HAVE_AVX2)
  static const bool supported = __builtin_cpu_supports("avx2");
  return supported ? &avx2_table() : nullptr;
#elif defined(TRANSNN_HAVE_NEON)
  return &neon_table();
#else
  return nullptr;
#endif
}

const KernelTable& active() {
  static const KernelTable* const table = [] {
    if (std::getenv("TRANSNN_FORCE_SCALAR") != nullptr) return &scalar_table();
    const KernelTable* simd = simd_table();
    return simd != nullptr ? simd : &scalar_table();
  }();
  return *table;
}

}  // namespace transnn::kernels
