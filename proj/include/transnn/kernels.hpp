#pragma once

#include <cstddef>
#include <string_view>

namespace transnn::kernels {

/// Data-parallel inner loops used by the mean-field, limit, certificate and
/// oracle code. Every variant performs the same floating-point operations in
/// the same order per output element, so all variants agree bit for bit.
struct KernelTable {
  std::string_view name;

  /// y[r] = sum_c a[c*rows + r] * x[c], accumulated in increasing c.
  void (*matvec)(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y);

  /// out[r] = sum_c |a[c*rows + r]|, accumulated in increasing c.
  void (*abs_row_sums)(const double* a, std::size_t rows, std::size_t cols, double* out);

  /// hi[i] = lo[i] * p; lo[i] = lo[i] * (1 - p). One doubling step of a
  /// product-Bernoulli expansion.
  void (*split_scale)(double* lo, double* hi, std::size_t len, double p);

  /// y[i] = y[i] + alpha * x[i].
  void (*axpy)(double alpha, const double* x, double* y, std::size_t len);
};

const KernelTable& scalar_table();

/// SIMD table for this build and CPU, or nullptr when unavailable.
const KernelTable* simd_table();

/// Table used by the library. SIMD when the CPU supports it, unless the
/// TRANSNN_FORCE_SCALAR environment variable is set at first use.
const KernelTable& active();

}  // namespace transnn::kernels
