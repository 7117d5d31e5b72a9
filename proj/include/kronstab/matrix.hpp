#pragma once

#include <cassert>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kronstab/field.hpp"

namespace kronstab {

/// Dense row-major matrix over a field. All entries share the field object.
template <class F>
class Matrix {
 public:
  using Field = F;
  using Element = typename F::Element;

  Matrix() = default;
  Matrix(F field, std::size_t rows, std::size_t cols)
      : field_(field), rows_(rows), cols_(cols), data_(rows * cols, field.zero()) {}

  static Matrix identity(F field, std::size_t n) {
    Matrix m(field, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
    return m;
  }

  static Matrix from_ints(F field, const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(field, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      assert(rows[i].size() == c);
      for (std::size_t j = 0; j < c; ++j) m(i, j) = field.from_int(rows[i][j]);
    }
    return m;
  }

  const F& field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Element& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Element& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<Element> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const Element> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!kronstab::is_zero(x)) return false;
    return true;
  }

  Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  /// Columns [first, first + count).
  Matrix columns(std::size_t first, std::size_t count) const {
    Matrix out(field_, rows_, count);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < count; ++j) out(i, j) = (*this)(i, first + j);
    return out;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    assert(a.cols_ == b.rows_);
    Matrix c(a.field_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Element& x = a(i, k);
        if (kronstab::is_zero(x)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += x * b(k, j);
      }
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    assert(a.rows_ == b.rows_ && a.cols_ == b.cols_);
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  F field_{};
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Element> data_;
};

/// Rank over Q by fraction-free (Bareiss) elimination on the row-scaled integer matrix.
std::size_t rank(const Matrix<RationalField>& m);
/// Rank over F_p by ordinary Gaussian elimination.
std::size_t rank(const Matrix<PrimeField>& m);

template <class F>
std::size_t kernel_dim(const Matrix<F>& m) {
  return m.cols() - rank(m);
}

/// Rank over Q that first tries a reduction modulo 2^31-1: rank mod p never
/// exceeds the rational rank, so a full-rank reduction settles the question.
/// Otherwise falls back to Bareiss. Used for large global-section matrices.
std::size_t rank_with_modular_shortcut(const Matrix<RationalField>& m);

/// Reduced row echelon form in place; returns the pivot columns.
template <class F>
std::vector<std::size_t> rref(Matrix<F>& m) {
  const F& f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t p = r;
    while (p < m.rows() && is_zero(m(p, c))) ++p;
    if (p == m.rows()) continue;
    if (p != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(r, j));
    typename F::Element inv = f.one() / m(r, c);
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) *= inv;
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || is_zero(m(i, c))) continue;
      typename F::Element factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) -= factor * m(r, j);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

/// Basis of the right kernel, returned as the columns of a cols x d matrix.
template <class F>
Matrix<F> kernel_basis(const Matrix<F>& m) {
  Matrix<F> e = m;
  auto pivots = rref(e);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::size_t d = m.cols() - pivots.size();
  Matrix<F> k(m.field(), m.cols(), d);
  std::size_t col = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(free, col) = m.field().one();
    for (std::size_t i = 0; i < pivots.size(); ++i) k(pivots[i], col) = -e(i, free);
    ++col;
  }
  return k;
}

template <class F>
std::optional<Matrix<F>> inverse(const Matrix<F>& m) {
  assert(m.rows() == m.cols());
  const std::size_t n = m.rows();
  Matrix<F> aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = m.field().one();
  }
  auto pivots = rref(aug);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  return aug.columns(n, n);
}

template <class F>
typename F::Element determinant(const Matrix<F>& m) {
  assert(m.rows() == m.cols());
  Matrix<F> a = m;
  typename F::Element det = m.field().one();
  const std::size_t n = a.rows();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && is_zero(a(p, c))) ++p;
    if (p == n) return m.field().zero();
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(p, j), a(c, j));
      det = -det;
    }
    det *= a(c, c);
    typename F::Element inv = m.field().one() / a(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (is_zero(a(i, c))) continue;
      typename F::Element factor = a(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) a(i, j) -= factor * a(c, j);
    }
  }
  return det;
}

/// Reduces a rational matrix entrywise into F (identity for Q).
template <class F>
Matrix<F> reduce(const Matrix<RationalField>& m, const F& field) {
  Matrix<F> out(field, m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = field.from_rational(m(i, j));
  return out;
}

template <class F>
std::string to_string(const Matrix<F>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += to_string(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

}  // namespace kronstab
