#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "semistable/finite_field.hpp"
#include "semistable/integer_arith.hpp"
#include "semistable/ternary_form.hpp"
#include "semistable/univariate.hpp"

namespace semistable {

enum class ReductionClass {
  Good,
  MinimallyBad,
  BadSemistableNodal,
  NotSemistableOrUnknown,
  SmallPrimeExcluded,
  ResidualUnknown,
};

inline constexpr std::array<ReductionClass, 6> kAllReductionClasses{
    ReductionClass::Good,
    ReductionClass::MinimallyBad,
    ReductionClass::BadSemistableNodal,
    ReductionClass::NotSemistableOrUnknown,
    ReductionClass::SmallPrimeExcluded,
    ReductionClass::ResidualUnknown};

std::string_view to_string(ReductionClass c);
/// Inverse of to_string; throws std::invalid_argument on unknown names.
ReductionClass reduction_class_from_string(std::string_view name);

/// Irreducible-factor degrees and multiplicities of a binary form over the
/// algebraic closure of F_p, with the root at infinity tracked separately.
struct MultiplicityProfile {
  /// (degree of irreducible factor over F_p, multiplicity), sorted.
  std::vector<std::pair<unsigned, unsigned>> factors;
  unsigned infinity_multiplicity = 0;
  unsigned formal_degree = 0;

  unsigned max_multiplicity() const;
  /// Geometric roots of multiplicity exactly two (infinity included).
  unsigned double_root_count() const;
  /// Number of distinct Frobenius orbits of double roots.
  unsigned double_root_orbits() const;
  bool all_even() const;

  bool operator==(const MultiplicityProfile &) const = default;
};

/// Requires p > F.degree and F not identically zero mod p.
MultiplicityProfile multiplicity_profile(const BinaryForm &form, const Integer &p);

struct PrimeVerdict {
  Integer prime;
  unsigned v_disc = 0;
  ReductionClass cls = ReductionClass::Good;
  std::optional<unsigned> nodes;       ///< over the algebraic closure
  std::optional<unsigned> components;  ///< geometric components
  std::optional<int> toric_rank;
  /// Lower bound on the toric rank when it is not known exactly.
  int toric_rank_floor = 0;
  bool tamagawa_one = false;
  /// F_p-rational component count, recorded when it is known.
  std::optional<unsigned> rational_components;

  bool operator==(const PrimeVerdict &) const = default;
};

/// m - c + 1. Rejects m < 0, c < 1 and a negative result.
int toric_rank(int nodes, int components);

/// Reduction type of y^2 = F(x, z) at p, for F of even degree 2g + 2 >= 4.
///
/// p <= A gives SmallPrimeExcluded; otherwise v_disc decides Good (0) and
/// MinimallyBad (1). For v_disc >= 2 the multiplicity profile of F mod p is
/// inspected: all multiplicities <= 2 gives BadSemistableNodal with m double
/// roots and two components exactly when every multiplicity is even.
/// `codisc_unit` states that p does not divide the discriminant of dF/dx, in
/// which case no root may have multiplicity three or more.
/// Throws DegenerateInputError if F vanishes identically mod p.
PrimeVerdict classify_hyperelliptic_prime(const BinaryForm &form, const Integer &p,
                                          const Integer &cutoff, unsigned v_disc,
                                          bool codisc_unit);

/// Reduction type of the plane curve f = 0 (degree d >= 3) at p, from the
/// valuation of D(f) and whether p divides R(f). Node and component counts
/// are filled in for p within the enumeration budget (and components only
/// for cubics, where a nodal curve has as many components as nodes).
PrimeVerdict classify_plane_prime(const TernaryForm &f, const Integer &p, const Integer &cutoff,
                                  unsigned v_disc, bool r_unit);

/// Largest prime for which F_p enumeration is attempted.
inline constexpr std::uint32_t kEnumerationPrimeBudget = 101;
/// Largest number of projective points singular_points_fp will scan.
inline constexpr std::uint64_t kEnumerationPointBudget = 20'000'000;

struct SingularPoint {
  /// Normalized so that the first nonzero coordinate is 1.
  std::array<SmallField::Element, 3> coords;
  bool node = false;
};

/// Exhaustive scan of P^2(F_{p^e}) for points where f and its partials all
/// vanish; each is tagged a node iff the 3x3 Hessian there has rank 2.
std::vector<SingularPoint> singular_points_fp(const TernaryForm &f, std::uint32_t p, unsigned e);

/// Length of the scheme cut out by f_x, f_y, f_z over the algebraic closure
/// of F_p, read off the stabilized Hilbert function of the Jacobian ideal
/// (p must not divide d). Each node contributes one. nullopt when the
/// singular locus is not finite.
std::optional<unsigned> singular_scheme_length(const TernaryForm &f, std::uint32_t p);

} // namespace semistable
