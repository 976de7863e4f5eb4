#pragma once

#include <cstddef>
#include <vector>

#include "semistable/integer_arith.hpp"

namespace semistable {

/// Dense row-major matrix of big integers.
class IntMatrix {
public:
  IntMatrix() = default;
  IntMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Integer &operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Integer &operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  /// Square submatrix on the given row and column index lists.
  IntMatrix submatrix(const std::vector<std::size_t> &row_idx,
                      const std::vector<std::size_t> &col_idx) const;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Integer> data_;
};

/// Fraction-free (Bareiss) elimination with row pivoting. Every division is
/// exact, so intermediate entries stay integral. The empty matrix has
/// determinant 1.
Integer bareiss_determinant(IntMatrix m);

} // namespace semistable
