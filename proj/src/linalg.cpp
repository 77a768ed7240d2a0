#include "weilcalc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "weilcalc/error.hpp"

namespace weilcalc {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorKind::InvalidAlgebra: return "InvalidAlgebra";
    case ErrorKind::SpanNotClosed: return "SpanNotClosed";
    case ErrorKind::NotUnital: return "NotUnital";
    case ErrorKind::NotMultiplicative: return "NotMultiplicative";
    case ErrorKind::DomainError: return "DomainError";
    case ErrorKind::DivisionByNilpotent: return "DivisionByNilpotent";
    case ErrorKind::ArityMismatch: return "ArityMismatch";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::IncompatiblePair: return "IncompatiblePair";
    case ErrorKind::SingularLinearPart: return "SingularLinearPart";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    case ErrorKind::NonProjectable: return "NonProjectable";
    case ErrorKind::ParseError: return "ParseError";
  }
  return "Unknown";
}

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

std::vector<double> Matrix::column(std::size_t c) const {
  std::vector<double> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

Matrix operator*(const Matrix& a, const Matrix& b) {
  if (a.cols() != b.rows()) throw Error(ErrorKind::ShapeMismatch, "matrix product shape");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

std::vector<double> operator*(const Matrix& a, std::span<const double> x) {
  if (a.cols() != x.size()) throw Error(ErrorKind::ShapeMismatch, "matrix-vector shape");
  std::vector<double> out(a.rows(), 0.0);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const double aik = a(i, k);
      if (aik != 0.0) out[i] += aik * x[k];
    }
  return out;
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return std::numeric_limits<double>::infinity();
  return max_abs_diff(a.data(), b.data());
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = std::abs(a[i] - b[i]);
    if (!(d <= worst)) worst = d;  // propagates NaN
  }
  return worst;
}

std::size_t rank(Matrix m, double tol) {
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    for (std::size_t i = r + 1; i < m.rows(); ++i)
      if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
    if (std::abs(m(piv, c)) <= tol) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(r, j), m(piv, j));
    for (std::size_t i = r + 1; i < m.rows(); ++i) {
      const double f = m(i, c) / m(r, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= f * m(r, j);
    }
    ++r;
  }
  return r;
}

double determinant(Matrix m) {
  if (m.rows() != m.cols()) throw Error(ErrorKind::ShapeMismatch, "determinant of non-square matrix");
  const std::size_t n = m.rows();
  double det = 1.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(m(i, c)) > std::abs(m(piv, c))) piv = i;
    if (m(piv, c) == 0.0) return 0.0;
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(piv, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      const double f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

std::optional<Matrix> inverse(const Matrix& in, double tol) {
  if (in.rows() != in.cols()) throw Error(ErrorKind::ShapeMismatch, "inverse of non-square matrix");
  const std::size_t n = in.rows();
  Matrix a = in;
  Matrix inv = Matrix::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
    if (std::abs(a(piv, c)) < tol) return std::nullopt;
    for (std::size_t j = 0; j < n; ++j) {
      std::swap(a(c, j), a(piv, j));
      std::swap(inv(c, j), inv(piv, j));
    }
    const double p = a(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      a(c, j) /= p;
      inv(c, j) /= p;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c) continue;
      const double f = a(i, c);
      if (f == 0.0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        a(i, j) -= f * a(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

std::optional<ColumnSolve> solve_columns(const Matrix& s, std::span<const double> b, double tol) {
  const std::size_t rows = s.rows();
  const std::size_t cols = s.cols();
  if (b.size() != rows) throw Error(ErrorKind::ShapeMismatch, "solve_columns rhs size");
  // Augmented elimination; pivot rows are recorded so back substitution only
  // touches the selected equations.
  Matrix a(rows, cols + 1);
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < cols; ++j) a(i, j) = s(i, j);
    a(i, cols) = b[i];
  }
  std::vector<std::size_t> used(rows, 0);
  std::vector<std::size_t> pivot_row(cols);
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t piv = rows;
    for (std::size_t i = 0; i < rows; ++i) {
      if (used[i]) continue;
      if (piv == rows || std::abs(a(i, c)) > std::abs(a(piv, c))) piv = i;
    }
    if (piv == rows || std::abs(a(piv, c)) <= tol) return std::nullopt;
    used[piv] = 1;
    pivot_row[c] = piv;
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == piv) continue;
      const double f = a(i, c) / a(piv, c);
      if (f == 0.0) continue;
      for (std::size_t j = c; j <= cols; ++j) a(i, j) -= f * a(piv, j);
    }
  }
  ColumnSolve out;
  out.x.resize(cols);
  for (std::size_t c = 0; c < cols; ++c) out.x[c] = a(pivot_row[c], cols) / a(pivot_row[c], c);
  const auto sx = s * std::span<const double>(out.x);
  out.residual = max_abs_diff(sx, b);
  return out;
}

}  // namespace weilcalc
