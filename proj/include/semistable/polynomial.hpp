#pragma once

#include <cstddef>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "semistable/integer_arith.hpp"

namespace semistable {

/// Sparse multivariate polynomial over Z. Terms map exponent vectors (one
/// entry per variable, in `variables()` order) to nonzero coefficients.
class IntPoly {
public:
  using Exponents = std::vector<unsigned>;

  IntPoly() = default;
  explicit IntPoly(std::vector<std::string> variables);

  static IntPoly constant(std::vector<std::string> variables, const Integer &c);
  static IntPoly variable(std::vector<std::string> variables, std::string_view name);

  const std::vector<std::string> &variables() const { return variables_; }
  const std::map<Exponents, Integer> &terms() const { return terms_; }
  std::size_t num_variables() const { return variables_.size(); }

  /// Throws std::invalid_argument if `name` is not a variable of this ring.
  std::size_t variable_index(std::string_view name) const;

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  /// Total degree; -1 for the zero polynomial.
  int degree() const;
  int degree_in(std::size_t var) const;
  Integer coefficient(const Exponents &e) const;

  /// Adds c * x^e, dropping the term if the coefficient cancels.
  void add_term(const Exponents &e, const Integer &c);

  Integer evaluate(std::span<const Integer> point) const;
  IntPoly derivative(std::size_t var) const;
  IntPoly derivative(std::string_view var) const { return derivative(variable_index(var)); }
  IntPoly pow(unsigned k) const;

  /// Dense coefficients (low to high) in `var`; every other variable must
  /// be absent.
  std::vector<Integer> univariate_coefficients(std::size_t var) const;
  /// Shorthand for polynomials in a single variable.
  std::vector<Integer> univariate_coefficients() const;

  std::string to_string() const;

  IntPoly &operator+=(const IntPoly &other);
  IntPoly &operator-=(const IntPoly &other);
  friend IntPoly operator+(IntPoly a, const IntPoly &b) { return a += b; }
  friend IntPoly operator-(IntPoly a, const IntPoly &b) { return a -= b; }
  friend IntPoly operator*(const IntPoly &a, const IntPoly &b);
  friend IntPoly operator*(IntPoly a, const Integer &c);
  IntPoly operator-() const;
  bool operator==(const IntPoly &other) const = default;

private:
  void require_same_ring(const IntPoly &other) const;

  std::vector<std::string> variables_;
  std::map<Exponents, Integer> terms_;
};

/// Parses an integer-coefficient expression built from decimal integers,
/// the given variable names, + - * ^ and parentheses. Whitespace is ignored;
/// exponents are nonnegative decimal integers; juxtaposition such as `2x`
/// multiplies. Throws ConfigError with a position on malformed input.
IntPoly parse_polynomial(std::string_view text, std::vector<std::string> variables);

/// Variable names t1..tn.
std::vector<std::string> parameter_names(std::size_t n);

} // namespace semistable
