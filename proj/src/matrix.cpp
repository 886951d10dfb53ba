#include "transnn/matrix.hpp"


#include "transnn/error.hpp"
#include "transnn/kernels.hpp"

namespace transnn {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (std::size_t c = 0; c < cols_; ++c)
    for (std::size_t r = 0; r < rows_; ++r) t(c, r) = (*this)(r, c);
  return t;
}

std::vector<double> multiply(const Matrix& m, std::span<const double> x) {
  if (x.size() != m.cols()) throw DomainError("matrix-vector dimension mismatch");
  std::vector<double> y(m.rows());
  kernels::active().matvec(m.data(), m.rows(), m.cols(), x.data(), y.data());
  return y;
}

Matrix multiply(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.cols() != rhs.rows()) throw DomainError("matrix-matrix dimension mismatch");
  Matrix out(lhs.rows(), rhs.cols());
  for (std::size_t c = 0; c < rhs.cols(); ++c)
    kernels::active().matvec(lhs.data(), lhs.rows(), lhs.cols(), rhs.column(c).data(),
                             out.column(c).data());
  return out;
}

Matrix hadamard(const Matrix& lhs, const Matrix& rhs) {
  if (lhs.rows() != rhs.rows() || lhs.cols() != rhs.cols())
    throw DomainError("hadamard dimension mismatch");
  Matrix out(lhs.rows(), lhs.cols());
  for (std::size_t c = 0; c < lhs.cols(); ++c)
    for (std::size_t r = 0; r < lhs.rows(); ++r) out(r, c) = lhs(r, c) * rhs(r, c);
  return out;
}

Matrix vstack(const Matrix& top, const Matrix& bottom) {
  if (top.cols() != bottom.cols()) throw DomainError("vstack column mismatch");
  Matrix out(top.rows() + bottom.rows(), top.cols());
  for (std::size_t c = 0; c < top.cols(); ++c) {
    for (std::size_t r = 0; r < top.rows(); ++r) out(r, c) = top(r, c);
    for (std::size_t r = 0; r < bottom.rows(); ++r) out(top.rows() + r, c) = bottom(r, c);
  }
  return out;
}

}  // namespace transnn
