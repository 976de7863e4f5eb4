#pragma once

#include <span>
#include <string>
#include <vector>

#include "semistable/integer_arith.hpp"
#include "semistable/linear_algebra.hpp"
#include "semistable/polynomial.hpp"

namespace semistable {

/// Dense univariate coefficients, lowest degree first.
using Coefficients = std::vector<Integer>;

/// Degree after dropping leading zeros; -1 for the zero polynomial.
int degree_of(std::span<const Integer> f);

Coefficients derivative(std::span<const Integer> f);

/// Sylvester matrix of f and g (actual degrees), f-rows first.
IntMatrix sylvester_matrix(std::span<const Integer> f, std::span<const Integer> g);

/// det of the Sylvester matrix. Rejects a zero input and the case where both
/// inputs are constants.
Integer sylvester_resultant(std::span<const Integer> f, std::span<const Integer> g);
Integer sylvester_resultant(const IntPoly &f, const IntPoly &g);

/// (-1)^(n(n-1)/2) * Res(f, f') / lc(f) for f of exact degree n >= 2.
Integer discriminant(std::span<const Integer> f);
Integer discriminant(const IntPoly &f);

/// Homogeneous f(x, z) = sum coefficients[i] x^i z^(degree - i).
struct BinaryForm {
  unsigned degree = 0;
  Coefficients coefficients; // size degree + 1

  BinaryForm() = default;
  BinaryForm(unsigned deg, Coefficients coeffs);

  bool is_zero() const;
  /// Coefficients of the dehomogenization f(x, 1).
  Coefficients dehomogenized() const { return coefficients; }
  Integer evaluate(const Integer &x, const Integer &z) const;
  /// d/dx, a form of degree `degree - 1`.
  BinaryForm derivative_x() const;
  std::string to_string() const;

  bool operator==(const BinaryForm &) const = default;
};

/// Rejects target_degree < deg f.
BinaryForm homogenize_binary(std::span<const Integer> f, unsigned target_degree);
BinaryForm homogenize_binary(const IntPoly &f, unsigned target_degree);

/// Discriminant of the binary form at its formal degree. When the leading
/// coefficient vanishes (a root at infinity) this equals a_{n-1}^2 times the
/// discriminant at degree n - 1, which is the limit of the generic formula.
/// Degree 1 forms have discriminant 1; rejects degree 0.
Integer discriminant(const BinaryForm &f);

} // namespace semistable
