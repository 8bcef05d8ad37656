#pragma once

// Dense row-major matrices and field linear algebra over the exact scalar
// domains of scalar.hpp.

#include <cstddef>
#include <optional>
#include <type_traits>
#include <utility>
#include <vector>

#include "tsring/error.hpp"
#include "tsring/scalar.hpp"

namespace tsring {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T())
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> data)
      : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw Error(ErrorCode::ShapeMismatch, "matrix data size");
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& data() const { return data_; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;

IntMatrix int_matrix(const std::vector<std::vector<long>>& rows);

template <class K>
Matrix<typename K::value_type> identity_matrix(const K& k, std::size_t n) {
  Matrix<typename K::value_type> m(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i) m(i, i) = k.one();
  return m;
}

template <class K>
Matrix<typename K::value_type> multiply(const K& k, const Matrix<typename K::value_type>& a,
                                        const Matrix<typename K::value_type>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::ShapeMismatch, "matrix product");
  Matrix<typename K::value_type> c(a.rows(), b.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t t = 0; t < a.cols(); ++t) {
      if (k.is_zero(a(i, t))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = k.add(c(i, j), k.mul(a(i, t), b(t, j)));
    }
  return c;
}

template <class K>
Matrix<typename K::value_type> add(const K& k, const Matrix<typename K::value_type>& a,
                                   const Matrix<typename K::value_type>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::ShapeMismatch, "matrix sum");
  Matrix<typename K::value_type> c(a.rows(), a.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = k.add(a(i, j), b(i, j));
  return c;
}

template <class T>
Matrix<T> transpose(const Matrix<T>& a) {
  Matrix<T> t(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
  return t;
}

template <class K>
bool is_zero_matrix(const K& k, const Matrix<typename K::value_type>& a) {
  for (const auto& v : a.data())
    if (!k.is_zero(v)) return false;
  return true;
}

// Entrywise image of an integer (or rational) matrix in the domain K.
template <class K, class T>
Matrix<typename K::value_type> map_matrix(const K& k, const Matrix<T>& a) {
  Matrix<typename K::value_type> out(a.rows(), a.cols(), k.zero());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if constexpr (std::is_same_v<T, Rational>)
        out(i, j) = k.from_rational(a(i, j));
      else
        out(i, j) = k.from_integer(Integer(a(i, j)));
    }
  return out;
}

// Reduced row echelon form over a field; returns pivot columns.
template <class K>
std::vector<std::size_t> row_reduce(const K& k, Matrix<typename K::value_type>& a) {
  static_assert(K::is_field);
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < a.cols() && row < a.rows(); ++col) {
    std::size_t piv = row;
    while (piv < a.rows() && k.is_zero(a(piv, col))) ++piv;
    if (piv == a.rows()) continue;
    a.swap_rows(piv, row);
    const auto inv = k.inv(a(row, col));
    for (std::size_t j = col; j < a.cols(); ++j) a(row, j) = k.mul(a(row, j), inv);
    for (std::size_t i = 0; i < a.rows(); ++i) {
      if (i == row || k.is_zero(a(i, col))) continue;
      const auto f = a(i, col);
      for (std::size_t j = col; j < a.cols(); ++j) a(i, j) = k.sub(a(i, j), k.mul(f, a(row, j)));
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <class K>
std::size_t rank(const K& k, Matrix<typename K::value_type> a) {
  return row_reduce(k, a).size();
}

// Basis of {x : a x = 0}, each vector of length a.cols().
template <class K>
std::vector<std::vector<typename K::value_type>> nullspace(const K& k, Matrix<typename K::value_type> a) {
  const auto pivots = row_reduce(k, a);
  std::vector<bool> is_pivot(a.cols(), false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::vector<typename K::value_type>> basis;
  for (std::size_t free = 0; free < a.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<typename K::value_type> v(a.cols(), k.zero());
    v[free] = k.one();
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = k.neg(a(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

template <class K>
typename K::value_type determinant(const K& k, Matrix<typename K::value_type> a) {
  static_assert(K::is_field);
  if (!a.square()) throw Error(ErrorCode::ShapeMismatch, "determinant of non-square matrix");
  auto det = k.one();
  const std::size_t n = a.rows();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && k.is_zero(a(piv, col))) ++piv;
    if (piv == n) return k.zero();
    if (piv != col) {
      a.swap_rows(piv, col);
      det = k.neg(det);
    }
    det = k.mul(det, a(col, col));
    const auto inv = k.inv(a(col, col));
    for (std::size_t i = col + 1; i < n; ++i) {
      if (k.is_zero(a(i, col))) continue;
      const auto f = k.mul(a(i, col), inv);
      for (std::size_t j = col; j < n; ++j) a(i, j) = k.sub(a(i, j), k.mul(f, a(col, j)));
    }
  }
  return det;
}

// Exact two-sided inverse; NotInvertible when the matrix is singular over K.
template <class K>
Matrix<typename K::value_type> inverse(const K& k, const Matrix<typename K::value_type>& a) {
  static_assert(K::is_field);
  if (!a.square()) throw Error(ErrorCode::ShapeMismatch, "inverse of non-square matrix");
  const std::size_t n = a.rows();
  Matrix<typename K::value_type> aug(n, 2 * n, k.zero());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = a(i, j);
    aug(i, n + i) = k.one();
  }
  const auto pivots = row_reduce(k, aug);
  if (pivots.size() < n || (n > 0 && pivots[n - 1] != n - 1))
    throw Error(ErrorCode::NotInvertible, "matrix is singular over " + k.name());
  Matrix<typename K::value_type> inv(n, n, k.zero());
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = aug(i, n + j);
  return inv;
}

// Inverse of an integer matrix over a field (Q or F_q).
template <class K>
Matrix<typename K::value_type> mat_inverse_over_field(const IntMatrix& c, const K& k) {
  return inverse(k, map_matrix(k, c));
}

// Fraction-free (Bareiss) determinant of an integer matrix.
Integer determinant(const IntMatrix& a);

// Rank over Q of an integer matrix.
std::size_t rational_rank(const IntMatrix& a);

// Inverse of a unimodular integer matrix; NotUnit if det is not +-1.
IntMatrix unimodular_inverse(const IntMatrix& a);

IntMatrix multiply(const IntMatrix& a, const IntMatrix& b);

}  // namespace tsring
