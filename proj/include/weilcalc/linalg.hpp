#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace weilcalc {

/// Small dense row-major matrix. Sizes here are tens, not thousands.
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  static Matrix identity(std::size_t n);

  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  [[nodiscard]] std::span<const double> data() const noexcept { return data_; }
  [[nodiscard]] std::vector<double> column(std::size_t c) const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
};

Matrix operator*(const Matrix& a, const Matrix& b);
std::vector<double> operator*(const Matrix& a, std::span<const double> x);

/// Largest absolute entrywise difference; +inf on shape mismatch.
double max_abs_diff(const Matrix& a, const Matrix& b);
double max_abs_diff(std::span<const double> a, std::span<const double> b);

/// Rank by Gaussian elimination with partial pivoting.
std::size_t rank(Matrix m, double tol);

double determinant(Matrix m);

/// Inverse, or nullopt when |pivot| < tol at some step.
std::optional<Matrix> inverse(const Matrix& m, double tol = 1e-12);

struct ColumnSolve {
  std::vector<double> x;
  double residual = 0.0;  // max-norm of S x - b
};

/// Solves S x = b for full-column-rank S by elimination on S's columns.
/// Exact for integer-like inputs whose pivots are +-1. Returns nullopt if
/// the columns of S are dependent.
std::optional<ColumnSolve> solve_columns(const Matrix& s, std::span<const double> b, double tol);

}  // namespace weilcalc
