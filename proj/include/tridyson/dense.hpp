#pragma once

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <ostream>
#include <stdexcept>
#include <type_traits>
#include <utility>
#include <vector>

#include "tridyson/rational.hpp"

namespace tridyson {

/// Small row-major dense matrix. Indices are 0-based.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols, const T& fill = T(0))
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  Matrix(std::initializer_list<std::initializer_list<T>> rows) {
    rows_ = rows.size();
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix initializer");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }
  [[nodiscard]] bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const T& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Copy with the given rows and columns removed (index lists need not be sorted).
  [[nodiscard]] Matrix without(const std::vector<std::size_t>& drop_rows,
                               const std::vector<std::size_t>& drop_cols) const {
    auto keep = [](std::size_t n, const std::vector<std::size_t>& drop) {
      std::vector<std::size_t> k;
      for (std::size_t i = 0; i < n; ++i) {
        bool dropped = false;
        for (auto d : drop) dropped |= (d == i);
        if (!dropped) k.push_back(i);
      }
      return k;
    };
    return select(keep(rows_, drop_rows), keep(cols_, drop_cols));
  }

  /// Submatrix with the listed rows and columns, in the listed order.
  [[nodiscard]] Matrix select(const std::vector<std::size_t>& row_idx,
                              const std::vector<std::size_t>& col_idx) const {
    Matrix m(row_idx.size(), col_idx.size());
    for (std::size_t i = 0; i < row_idx.size(); ++i)
      for (std::size_t j = 0; j < col_idx.size(); ++j) m(i, j) = (*this)(row_idx[i], col_idx[j]);
    return m;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    Matrix m(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k)
        for (std::size_t j = 0; j < b.cols_; ++j) m(i, j) += a(i, k) * b(k, j);
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << "[";
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ", [" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? ", " : "") << m(i, j);
      os << "]";
    }
    return os << "]";
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

/// Determinant of a square matrix.
///
/// Floating-point scalars use Gaussian elimination with partial pivoting.
/// Exact scalars (rationals, rational polynomials) use fraction-free Bareiss
/// elimination, where every division is exact. The empty matrix has determinant 1.
template <class T>
T dense_det(Matrix<T> m) {
  if (!m.square()) throw std::invalid_argument("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  if (n == 0) return T(1);

  if constexpr (std::is_floating_point_v<T>) {
    T det = 1;
    for (std::size_t k = 0; k < n; ++k) {
      std::size_t piv = k;
      for (std::size_t i = k + 1; i < n; ++i)
        if (std::abs(m(i, k)) > std::abs(m(piv, k))) piv = i;
      if (m(piv, k) == T(0)) return T(0);
      if (piv != k) {
        for (std::size_t j = k; j < n; ++j) std::swap(m(k, j), m(piv, j));
        det = -det;
      }
      det *= m(k, k);
      for (std::size_t i = k + 1; i < n; ++i) {
        const T factor = m(i, k) / m(k, k);
        for (std::size_t j = k + 1; j < n; ++j) m(i, j) -= factor * m(k, j);
      }
    }
    return det;
  } else {
    T prev(1);
    bool negate = false;
    for (std::size_t k = 0; k + 1 < n; ++k) {
      std::size_t piv = k;
      while (piv < n && is_zero(m(piv, k))) ++piv;
      if (piv == n) return T(0);
      if (piv != k) {
        for (std::size_t j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
        negate = !negate;
      }
      for (std::size_t i = k + 1; i < n; ++i) {
        for (std::size_t j = k + 1; j < n; ++j) {
          T num = m(i, j) * m(k, k) - m(i, k) * m(k, j);
          m(i, j) = exact_div(num, prev);
        }
        m(i, k) = T(0);
      }
      prev = m(k, k);
    }
    T det = m(n - 1, n - 1);
    if (negate) det = T(-det);
    return det;
  }
}

}  // namespace tridyson
