#pragma once

#include <array>
#include <map>
#include <string>
#include <vector>

#include "semistable/integer_arith.hpp"
#include "semistable/polynomial.hpp"

namespace semistable {

/// Exponents (i, j, k) of x^i y^j z^k.
using Monomial3 = std::array<unsigned, 3>;

/// All monomials of total degree `degree`, ordered x^d, x^(d-1)y, x^(d-1)z,
/// x^(d-2)y^2, ... (descending in the x exponent, then in the y exponent).
std::vector<Monomial3> ternary_monomials(unsigned degree);

using Matrix3 = std::array<std::array<Integer, 3>, 3>;

/// Homogeneous polynomial in x, y, z with integer coefficients.
class TernaryForm {
public:
  explicit TernaryForm(unsigned degree = 0) : degree_(degree) {}

  /// Accepts a polynomial in variables {x, y, z} (any subset, any order) that
  /// is homogeneous of the given degree. The zero polynomial is allowed.
  static TernaryForm from_poly(const IntPoly &f, unsigned degree);
  /// Parses a homogeneous literal in x, y, z; the degree is inferred.
  static TernaryForm parse(std::string_view text);

  unsigned degree() const { return degree_; }
  const std::map<Monomial3, Integer> &terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  Integer coefficient(const Monomial3 &m) const;
  void add_term(const Monomial3 &m, const Integer &c);

  /// Partial derivative in variable 0 (x), 1 (y) or 2 (z). Rejects degree 0.
  TernaryForm partial(unsigned var) const;
  Integer evaluate(const Integer &x, const Integer &y, const Integer &z) const;
  /// f(M * (x, y, z)^T): substitute the i-th coordinate by row i of M.
  TernaryForm compose(const Matrix3 &m) const;
  /// Coefficients reduced into [0, p).
  TernaryForm reduced_mod(const Integer &p) const;

  std::string to_string() const;

  friend TernaryForm operator*(const TernaryForm &a, const TernaryForm &b);
  friend TernaryForm operator-(const TernaryForm &a, const TernaryForm &b);
  friend TernaryForm operator+(const TernaryForm &a, const TernaryForm &b);
  bool operator==(const TernaryForm &) const = default;

private:
  unsigned degree_;
  std::map<Monomial3, Integer> terms_;
};

} // namespace semistable
