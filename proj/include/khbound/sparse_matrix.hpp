#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "khbound/rational.hpp"

namespace khbound {

/// Sparse matrix over Q in coordinate form. Zero entries are never stored.
class SparseMatrix {
 public:
  SparseMatrix() = default;
  SparseMatrix(std::size_t rows, std::size_t cols);

  static SparseMatrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t nonzeros() const;

  /// Sets entry (r, c); assigning zero erases it. Throws std::out_of_range.
  void set(std::size_t r, std::size_t c, const Rational& value);
  /// Adds to entry (r, c), erasing it if the sum cancels.
  void add(std::size_t r, std::size_t c, const Rational& value);
  Rational get(std::size_t r, std::size_t c) const;

  /// Row r as a column-ordered map of nonzeros.
  const std::map<std::size_t, Rational>& row(std::size_t r) const { return data_[r]; }

  SparseMatrix transpose() const;
  bool is_zero() const { return nonzeros() == 0; }

  friend SparseMatrix operator*(const SparseMatrix& a, const SparseMatrix& b);
  friend bool operator==(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<std::map<std::size_t, Rational>> data_;
};

/// Exact rank over Q by sparse elimination with Markowitz-style pivoting.
std::size_t rank(const SparseMatrix& m);

/// Eliminates the nonzero pivot at (row, col) and returns the Schur complement
/// on the remaining rows and columns, in their original relative order.
/// Throws std::invalid_argument for a zero pivot or out-of-range indices.
SparseMatrix eliminate_pivot(const SparseMatrix& m, std::size_t row, std::size_t col);

}  // namespace khbound
