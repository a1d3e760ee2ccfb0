#pragma once

// Small dense matrices over a Scalar with Gauss-Jordan elimination.

#include "nahm/scalar.hpp"

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <vector>

namespace nahm {

template <class S>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, S(0)) {}

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = S(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  S& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const S& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  friend DenseMatrix operator*(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.cols_ != y.rows_) throw std::invalid_argument("matrix shape mismatch");
    DenseMatrix r(x.rows_, y.cols_);
    for (std::size_t i = 0; i < x.rows_; ++i)
      for (std::size_t k = 0; k < x.cols_; ++k) {
        if (ScalarTraits<S>::is_zero(x(i, k))) continue;
        for (std::size_t j = 0; j < y.cols_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    return r;
  }
  friend DenseMatrix operator+(DenseMatrix x, const DenseMatrix& y) {
    check_same(x, y);
    for (std::size_t n = 0; n < x.data_.size(); ++n) x.data_[n] += y.data_[n];
    return x;
  }
  friend DenseMatrix operator-(DenseMatrix x, const DenseMatrix& y) {
    check_same(x, y);
    for (std::size_t n = 0; n < x.data_.size(); ++n) x.data_[n] -= y.data_[n];
    return x;
  }
  friend DenseMatrix operator*(const S& s, DenseMatrix x) {
    for (auto& v : x.data_) v *= s;
    return x;
  }
  friend bool operator==(const DenseMatrix& x, const DenseMatrix& y) {
    return x.rows_ == y.rows_ && x.cols_ == y.cols_ && x.data_ == y.data_;
  }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!ScalarTraits<S>::is_zero(v)) return false;
    return true;
  }

  std::vector<S> apply(const std::vector<S>& v) const {
    if (v.size() != cols_) throw std::invalid_argument("vector length mismatch");
    std::vector<S> r(rows_, S(0));
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
    return r;
  }

 private:
  static void check_same(const DenseMatrix& x, const DenseMatrix& y) {
    if (x.rows_ != y.rows_ || x.cols_ != y.cols_) throw std::invalid_argument("matrix shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<S> data_;
};

/// Reduced row echelon form of [m | rhs columns]; returns pivot columns.
template <class S>
std::vector<std::size_t> row_reduce(DenseMatrix<S>& m, std::size_t pivot_cols) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < pivot_cols && row < m.rows(); ++col) {
    std::size_t best = m.rows();
    S best_abs(0);
    for (std::size_t r = row; r < m.rows(); ++r) {
      if (ScalarTraits<S>::is_zero(m(r, col))) continue;
      S a = abs_value(m(r, col));
      if (best == m.rows() || a > best_abs) {
        best = r;
        best_abs = a;
        if constexpr (ScalarTraits<S>::exact) break;
      }
    }
    if (best == m.rows()) continue;
    for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(row, c), m(best, c));
    const S inv = S(1) / m(row, col);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || ScalarTraits<S>::is_zero(m(r, col))) continue;
      const S f = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) -= f * m(row, c);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class S>
std::size_t rank(DenseMatrix<S> m) {
  return row_reduce(m, m.cols()).size();
}

/// Affine solution set {particular + span(nullspace)} of m x = rhs, or nullopt if inconsistent.
template <class S>
struct SolutionSet {
  std::vector<S> particular;
  std::vector<std::vector<S>> nullspace;
};

template <class S>
std::optional<SolutionSet<S>> solve_general(const DenseMatrix<S>& m, const std::vector<S>& rhs) {
  if (rhs.size() != m.rows()) throw std::invalid_argument("rhs length mismatch");
  const std::size_t n = m.cols();
  DenseMatrix<S> aug(m.rows(), n + 1);
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = m(r, c);
    aug(r, n) = rhs[r];
  }
  const auto pivots = row_reduce(aug, n);
  for (std::size_t r = pivots.size(); r < aug.rows(); ++r)
    if (!ScalarTraits<S>::is_zero(aug(r, n))) return std::nullopt;

  SolutionSet<S> out;
  out.particular.assign(n, S(0));
  std::vector<bool> is_pivot(n, false);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    out.particular[pivots[r]] = aug(r, n);
    is_pivot[pivots[r]] = true;
  }
  for (std::size_t free = 0; free < n; ++free) {
    if (is_pivot[free]) continue;
    std::vector<S> v(n, S(0));
    v[free] = S(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = -aug(r, free);
    out.nullspace.push_back(std::move(v));
  }
  return out;
}

/// Unique solution of a square nonsingular system; throws MathError-like invalid_argument otherwise.
template <class S>
std::vector<S> solve_unique(const DenseMatrix<S>& m, const std::vector<S>& rhs) {
  auto sol = solve_general(m, rhs);
  if (!sol) throw std::invalid_argument("linear system is inconsistent");
  if (!sol->nullspace.empty()) throw std::invalid_argument("linear system is underdetermined");
  return sol->particular;
}

}  // namespace nahm
