#include <cmath>

#include "transnn/kernels.hpp"

namespace transnn::kernels {
namespace {

void matvec(const double* a, std::size_t rows, std::size_t cols, const double* x, double* y) {
  for (std::size_t r = 0; r < rows; ++r) y[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double xc = x[c];
    const double* col = a + c * rows;
    for (std::size_t r = 0; r < rows; ++r) y[r] = y[r] + col[r] * xc;
  }
}

void abs_row_sums(const double* a, std::size_t rows, std::size_t cols, double* out) {
  for (std::size_t r = 0; r < rows; ++r) out[r] = 0.0;
  for (std::size_t c = 0; c < cols; ++c) {
    const double* col = a + c * rows;
    for (std::size_t r = 0; r < rows; ++r) out[r] = out[r] + std::fabs(col[r]);
  }
}

void split_scale(double* lo, double* hi, std::size_t len, double p) {
  const double q = 1.0 - p;
  for (std::size_t i = 0; i < len; ++i) {
    hi[i] = lo[i] * p;
    lo[i] = lo[i] * q;
  }
}

void axpy(double alpha, const double* x, double* y, std::size_t len) {
  for (std::size_t i = 0; i < len; ++i) y[i] = y[i] + alpha * x[i];
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable table{"scalar", &matvec, &abs_row_sums, &split_scale, &axpy};
  return table;
}

}  // namespace transnn::kernels
