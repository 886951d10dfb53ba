#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace transnn {

/// Dense column-major matrix of doubles.
///
/// Column-major storage keeps each column contiguous, which is what the
/// mat-vec and row-sum kernels stream over.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[c * rows_ + r]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[c * rows_ + r]; }

  std::span<double> column(std::size_t c) { return {data_.data() + c * rows_, rows_}; }
  std::span<const double> column(std::size_t c) const { return {data_.data() + c * rows_, rows_}; }

  const double* data() const { return data_.data(); }
  double* data() { return data_.data(); }

  Matrix transposed() const;

  bool operator==(const Matrix&) const = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

/// y = m * x through the active kernel table.
std::vector<double> multiply(const Matrix& m, std::span<const double> x);

/// Column-by-column product through the mat-vec kernel.
Matrix multiply(const Matrix& lhs, const Matrix& rhs);

/// Elementwise product.
Matrix hadamard(const Matrix& lhs, const Matrix& rhs);

/// [top; bottom], both with the same column count.
Matrix vstack(const Matrix& top, const Matrix& bottom);

}  // namespace transnn
