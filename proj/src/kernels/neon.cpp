#include <arm_neon.h>

#include <cmath>

#include "transnn/kernels.hpp"

namespace transnn::kernels {
namespace {

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    const float64x2_t xc = vdupq_n_f64(x[c]);
    std::size_t r = 0;
    for (; r + 2 <= rows; r += 2) {
      const float64x2_t prod = vmulq_f64(vld1q_f64(col + r), xc);
      vst1q_f64(y + r, vaddq_f64(vld1q_f64(y + r), prod));
    }
    for (; r < rows; ++r) y[r] = y[r] + col[r] * x[c];
  }
}

void abs_row_sums(const double* a, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    std::size_t r = 0;
    for (; r + 2 <= rows; r += 2) {
      vst1q_f64(out + r, vaddq_f64(vld1q_f64(out + r), vabsq_f64(vld1q_f64(col + r))));
    }
    for (; r < rows; ++r) out[r] = out[r] + std::fabs(col[r]);
  }
}

void split_scale(double* lo, double* hi, std::size_t len, double p) {
  const double q = 1.0 - p;
  const float64x2_t vp = vdupq_n_f64(p);
  const float64x2_t vq = vdupq_n_f64(q);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    const float64x2_t v = vld1q_f64(lo + i);
    vst1q_f64(hi + i, vmulq_f64(v, vp));
    vst1q_f64(lo + i, vmulq_f64(v, vq));
  }
  for (; i < len; ++i) {
    hi[i] = lo[i] * p;
    lo[i] = lo[i] * q;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  const float64x2_t va = vdupq_n_f64(alpha);
  std::size_t i = 0;
  for (; i + 2 <= len; i += 2) {
    vst1q_f64(y + i, vaddq_f64(vld1q_f64(y + i), vmulq_f64(va, vld1q_f64(x + i))));
  }
  for (; i < len; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable table{"neon", &matvec, &abs_row_sums, &split_scale, &axpy};
  return table;
}

}  // namespace transnn::kernels
