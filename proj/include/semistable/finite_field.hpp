#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "semistable/integer_arith.hpp"

namespace semistable {

/// Univariate polynomial over F_p with coefficients in [0, p), lowest degree
/// first, no trailing zeros. p may be arbitrarily large.
class FpPoly {
public:
  FpPoly() = default;
  FpPoly(Integer p, std::vector<Integer> coefficients);

  static FpPoly constant(const Integer &p, const Integer &c) { return FpPoly(p, {c}); }
  /// c * x^k
  static FpPoly monomial(const Integer &p, unsigned k, const Integer &c = 1);

  const Integer &modulus() const { return p_; }
  const std::vector<Integer> &coefficients() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  Integer leading() const { return c_.empty() ? Integer(0) : c_.back(); }

  FpPoly monic() const;
  FpPoly derivative() const;
  Integer evaluate(const Integer &x) const;

  friend FpPoly operator+(const FpPoly &a, const FpPoly &b);
  friend FpPoly operator-(const FpPoly &a, const FpPoly &b);
  friend FpPoly operator*(const FpPoly &a, const FpPoly &b);
  /// Quotient and remainder; throws on division by zero.
  static std::pair<FpPoly, FpPoly> divmod(const FpPoly &a, const FpPoly &b);
  friend FpPoly operator/(const FpPoly &a, const FpPoly &b) { return divmod(a, b).first; }
  friend FpPoly operator%(const FpPoly &a, const FpPoly &b) { return divmod(a, b).second; }

  bool operator==(const FpPoly &other) const { return p_ == other.p_ && c_ == other.c_; }
  /// Orders by degree, then coefficients from the top.
  bool operator<(const FpPoly &other) const;

  std::string to_string() const;

private:
  void normalize();

  Integer p_ = 2;
  std::vector<Integer> c_;
};

/// Monic gcd (zero if both inputs are zero).
FpPoly gcd(const FpPoly &a, const FpPoly &b);
FpPoly powmod(const FpPoly &base, const Integer &exponent, const FpPoly &modulus);

/// Square-free decomposition f = lc * prod g_i^i with g_i monic, squarefree
/// and pairwise coprime; handles p <= deg f via p-th roots. Entries with
/// trivial g_i are omitted.
std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly &f);

/// Distinct-degree factorization of a monic squarefree polynomial:
/// (product of all irreducible factors of degree d, d).
std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly &f);

/// Full factorization into monic irreducibles with multiplicities, sorted.
/// Rejects the zero polynomial. Deterministic (Cantor-Zassenhaus with a fixed
/// seed; the trace map is used in characteristic 2).
std::vector<std::pair<FpPoly, unsigned>> fp_factorize(const FpPoly &f);

/// F_q for q = p^e with small p and e in {1, 2, 3}, realized as
/// F_p[w]/(m(w)) for the first monic irreducible m of degree e found by a
/// lexicographic search. Elements are coefficient triples in w.
class SmallField {
public:
  using Element = std::array<std::uint32_t, 3>;

  SmallField(std::uint32_t p, unsigned e);

  std::uint32_t characteristic() const { return p_; }
  unsigned degree() const { return e_; }
  std::uint64_t order() const { return q_; }

  /// Element number i in 0..q-1 (base-p digits), element 0 is zero.
  Element element(std::uint64_t index) const;
  Element from_integer(const Integer &n) const;
  Element zero() const { return {0, 0, 0}; }
  Element one() const { return {1, 0, 0}; }

  Element add(const Element &a, const Element &b) const;
  Element sub(const Element &a, const Element &b) const;
  Element mul(const Element &a, const Element &b) const;
  Element pow(Element a, std::uint64_t k) const;
  Element inverse(const Element &a) const; // a != 0
  static bool is_zero(const Element &a) { return a[0] == 0 && a[1] == 0 && a[2] == 0; }
  /// True iff a lies in the subfield F_{p^k}.
  bool in_subfield(const Element &a, unsigned k) const;

private:
  std::uint32_t p_;
  unsigned e_;
  std::uint64_t q_;
  std::array<std::uint32_t, 3> reduction_{}; // w^e = -(m0 + m1 w + m2 w^2)
};

} // namespace semistable
