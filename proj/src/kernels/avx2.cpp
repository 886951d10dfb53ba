#include <immintrin.h>

#include <cmath>

#include "transnn/kernels.hpp"

namespace transnn::kernels {
namespace {

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    const __m256d xc = _mm256_set1_pd(x[c]);
    std::size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
      const __m256d prod = _mm256_mul_pd(_mm256_loadu_pd(col + r), xc);
      _mm256_storeu_pd(y + r, _mm256_add_pd(_mm256_loadu_pd(y + r), prod));
    }
    for (; r < rows; ++r) y[r] = y[r] + col[r] * x[c];
  }
}

void abs_row_sums(const double* a, std::size_t rows, std::size_t cols, double* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    std::size_t r = 0;
    for (; r + 4 <= rows; r += 4) {
      const __m256d v = _mm256_andnot_pd(sign, _mm256_loadu_pd(col + r));
      _mm256_storeu_pd(out + r, _mm256_add_pd(_mm256_loadu_pd(out + r), v));
    }
    for (; r < rows; ++r) out[r] = out[r] + std::fabs(col[r]);
  }
}

void split_scale(double* lo, double* hi, std::size_t len, double p) {
  const double q = 1.0 - p;
  const __m256d vp = _mm256_set1_pd(p);
  const __m256d vq = _mm256_set1_pd(q);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d v = _mm256_loadu_pd(lo + i);
    _mm256_storeu_pd(hi + i, _mm256_mul_pd(v, vp));
    _mm256_storeu_pd(lo + i, _mm256_mul_pd(v, vq));
  }
  for (; i < len; ++i) {
    hi[i] = lo[i] * p;
    lo[i] = lo[i] * q;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  const __m256d va = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 4 <= len; i += 4) {
    const __m256d prod = _mm256_mul_pd(va, _mm256_loadu_pd(x + i));
    _mm256_storeu_pd(y + i, _mm256_add_pd(_mm256_loadu_pd(y + i), prod));
  }
  for (; i < len; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable table{"avx2", &matvec, &abs_row_sums, &split_scale, &axpy};
  return table;
}

}  // namespace transnn::kernels
