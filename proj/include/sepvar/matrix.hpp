#pragma once

// Dense row-major matrices and Gaussian elimination over any scalar kind.
//
// Pivoting: exact scalars take the first nonzero entry of the column; float
// scalars (and duals over floats) take the entry of largest magnitude, ties to
// the lowest row index. A float pivot is rejected when its magnitude is at most
// 1e-12 times the largest row scale of the input matrix.

#include "sepvar/error.hpp"
#include "sepvar/scalar.hpp"

#include <algorithm>
#include <limits>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace sepvar {

inline constexpr double kPivotThreshold = 1e-12;

template <class S>
class Matrix {
public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : Matrix(rows, cols, lift<S>(Rational(0))) {}
  Matrix(std::size_t rows, std::size_t cols, const S& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  S& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const S& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<S> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const S> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  std::vector<S> column(std::size_t j) const {
    std::vector<S> c;
    c.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c.push_back((*this)(i, j));
    return c;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  /// Copy without row `skip`.
  Matrix without_row(std::size_t skip) const {
    Matrix out(rows_ - 1, cols_);
    for (std::size_t i = 0, r = 0; i < rows_; ++i) {
      if (i == skip) continue;
      for (std::size_t j = 0; j < cols_; ++j) out(r, j) = (*this)(i, j);
      ++r;
    }
    return out;
  }

  friend bool operator==(const Matrix& x, const Matrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<S> data_;
};

/// Largest |entry| over the whole matrix (the largest row scale).
template <class S>
double max_row_scale(const Matrix<S>& a) {
  double scale = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) scale = std::max(scale, magnitude(a(i, j)));
  return scale;
}

namespace detail {

// Row index of the pivot for column `col` among rows [from, rows), or
// rows() when none is admissible.
template <class S>
std::size_t choose_pivot(const Matrix<S>& a, std::size_t col, std::size_t from, double threshold) {
  if constexpr (is_exact_v<S>) {
    for (std::size_t i = from; i < a.rows(); ++i)
      if (!is_zero(base_value(a(i, col)))) return i;
    return a.rows();
  } else {
    std::size_t best = a.rows();
    double best_mag = threshold;
    for (std::size_t i = from; i < a.rows(); ++i) {
      double m = magnitude(a(i, col));
      if (m > best_mag) {
        best = i;
        best_mag = m;
      }
    }
    return best;
  }
}

} // namespace detail

/// Solves A X = B for square A. Throws SingularSystem with the column index of
/// the first failing pivot.
template <class S>
Matrix<S> solve_multi(Matrix<S> a, Matrix<S> b) {
  const std::size_t n = a.rows();
  if (a.cols() != n) throw DimensionMismatch("matrix is " + std::to_string(n) + "x" + std::to_string(a.cols()));
  if (b.rows() != n) throw DimensionMismatch("right-hand side has " + std::to_string(b.rows()) + " rows");
  const double threshold = kPivotThreshold * max_row_scale(a);

  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = detail::choose_pivot(a, col, col, threshold);
    if (p == n) throw SingularSystem(col);
    a.swap_rows(p, col);
    b.swap_rows(p, col);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (is_exact_v<S> && is_identically_zero(a(r, col))) continue;
      S factor = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
      for (std::size_t j = 0; j < b.cols(); ++j) b(r, j) -= factor * b(col, j);
    }
  }

  Matrix<S> x(n, b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j) {
    for (std::size_t i = n; i-- > 0;) {
      S acc = b(i, j);
      for (std::size_t k = i + 1; k < n; ++k) acc -= a(i, k) * x(k, j);
      x(i, j) = acc / a(i, i);
    }
  }
  return x;
}

template <class S>
std::vector<S> solve(const Matrix<S>& a, const std::vector<S>& rhs) {
  Matrix<S> b(rhs.size(), 1);
  for (std::size_t i = 0; i < rhs.size(); ++i) b(i, 0) = rhs[i];
  return solve_multi(a, std::move(b)).column(0);
}

/// Rank by elimination with the same pivot rule. `scale` overrides the float
/// threshold reference (defaults to the matrix's own largest row scale).
template <class S>
std::size_t rank(Matrix<S> a, double scale = -1.0) {
  if (a.rows() == 0 || a.cols() == 0) return 0;
  const double threshold = kPivotThreshold * (scale < 0.0 ? max_row_scale(a) : scale);
  std::size_t r = 0;
  for (std::size_t col = 0; col < a.cols() && r < a.rows(); ++col) {
    std::size_t p = detail::choose_pivot(a, col, r, threshold);
    if (p == a.rows()) continue;
    a.swap_rows(p, r);
    for (std::size_t i = r + 1; i < a.rows(); ++i) {
      if (is_identically_zero(a(i, col))) continue;
      S factor = a(i, col) / a(r, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) -= factor * a(r, j);
    }
    ++r;
  }
  return r;
}

/// Ratio of the largest to the smallest pivot magnitude of the float
/// elimination; a cheap conditioning estimate.
template <class S>
double pivot_ratio(Matrix<S> a) {
  const std::size_t n = a.rows();
  double lo = 0.0, hi = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t p = detail::choose_pivot(a, col, col, 0.0);
    if (p == n) return std::numeric_limits<double>::infinity();
    a.swap_rows(p, col);
    double m = magnitude(a(col, col));
    lo = col == 0 ? m : std::min(lo, m);
    hi = std::max(hi, m);
    for (std::size_t r = col + 1; r < n; ++r) {
      S factor = a(r, col) / a(col, col);
      for (std::size_t j = col; j < n; ++j) a(r, j) -= factor * a(col, j);
    }
  }
  return n == 0 ? 1.0 : hi / lo;
}

} // namespace sepvar
