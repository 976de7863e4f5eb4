#include "semistable/linear_algebra.hpp"

#include <stdexcept>
#include <utility>

namespace semistable {

IntMatrix IntMatrix::submatrix(const std::vector<std::size_t> &row_idx,
                               const std::vector<std::size_t> &col_idx) const {
  IntMatrix out(row_idx.size(), col_idx.size());
  for (std::size_t r = 0; r < row_idx.size(); ++r)
    for (std::size_t c = 0; c < col_idx.size(); ++c)
      out(r, c) = (*this)(row_idx[r], col_idx[c]);
  return out;
}

Integer bareiss_determinant(IntMatrix m) {
  if (m.rows() != m.cols())
    throw std::invalid_argument("bareiss_determinant: matrix is not square");
  const std::size_t n = m.rows();
  if (n == 0)
    return 1;
  int sign = 1;
  Integer previous = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m(k, k) == 0) {
      std::size_t pivot = k + 1;
      while (pivot < n && m(pivot, k) == 0)
        ++pivot;
      if (pivot == n)
        return 0;
      for (std::size_t c = k; c < n; ++c)
        swap(m(k, c), m(pivot, c));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Integer &entry = m(i, j);
        entry = entry * m(k, k) - m(i, k) * m(k, j);
        mpz_divexact(entry.get_mpz_t(), entry.get_mpz_t(), previous.get_mpz_t());
      }
      m(i, k) = 0;
    }
    previous = m(k, k);
  }
  return sign < 0 ? Integer(-m(n - 1, n - 1)) : m(n - 1, n - 1);
}

} // namespace semistable
