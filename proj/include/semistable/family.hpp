#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <json.hpp>

#include "semistable/integer_arith.hpp"
#include "semistable/macaulay.hpp"
#include "semistable/polynomial.hpp"
#include "semistable/ternary_form.hpp"
#include "semistable/univariate.hpp"

namespace semistable {

enum class FamilyKind { Hyperelliptic, Plane };

/// How bad primes are counted for a family.
///   MinimallyBad: primes with v_p(disc) = 1, no exclusion.
///   WeakHyperelliptic: primes dividing disc but not disc(f').
///   WeakPlane: primes dividing D(f) but not R(f).
enum class CountingMode { MinimallyBad, WeakHyperelliptic, WeakPlane };

std::string_view to_string(FamilyKind k);
std::string_view to_string(CountingMode m);
/// Accepts "minimal", "weak" (resolved against the kind) and the long names
/// "minimally-bad", "weak-hyperelliptic", "weak-plane". Throws ConfigError.
CountingMode parse_counting_mode(std::string_view name, FamilyKind kind);

/// 2g + 2 for hyperelliptic families, max(d, 3(d - 1)) for plane ones.
Integer default_cutoff(FamilyKind kind, unsigned genus_or_degree);

struct CurveFamily {
  std::string name;
  FamilyKind kind = FamilyKind::Hyperelliptic;
  /// g for hyperelliptic families, d for plane ones.
  unsigned genus_or_degree = 1;
  unsigned num_params = 1;
  /// Hyperelliptic: a_0 .. a_{2g+2}, a_i multiplying x^i z^(2g+2-i).
  /// Plane: a_ijk in ternary_monomials(d) order.
  std::vector<IntPoly> coefficients;
  unsigned declared_c = 1;
  Integer cutoff = 4;
  CountingMode mode = CountingMode::MinimallyBad;

  unsigned form_degree() const;
  unsigned genus() const;

  /// Checks the structural invariants; throws ConfigError.
  void validate() const;
};

/// A family evaluated at a parameter point. `disc` is disc(F) for
/// hyperelliptic curves and D(f) = Res(f_x, f_y, f_z) for plane curves;
/// `codisc` is disc(dF/dx) or R(f) respectively, when requested.
struct Specialization {
  std::vector<Integer> point;
  std::variant<BinaryForm, TernaryForm> curve;
  bool identically_zero = false;
  Integer disc;
  std::optional<Integer> codisc;

  bool degenerate() const { return identically_zero || disc == 0; }
  const BinaryForm &binary() const { return std::get<BinaryForm>(curve); }
  const TernaryForm &ternary() const { return std::get<TernaryForm>(curve); }
};

/// Substitutes t into every coefficient polynomial. Throws
/// std::invalid_argument when t has the wrong length.
std::variant<BinaryForm, TernaryForm> specialize_curve(const CurveFamily &family,
                                                       std::span<const Integer> t);

/// Curve, discriminant and (if `with_codisc`) the exclusion quantity at t.
/// Degenerate points are tagged, not rejected. A vanishing H_xy makes R
/// undefined and is reported by a ZeroHessianMinorError.
Specialization specialize(const CurveFamily &family, std::span<const Integer> t,
                          bool with_codisc, const MacaulayOptions &options = {});

Integer disc_at(const CurveFamily &family, std::span<const Integer> t,
                const MacaulayOptions &options = {});
Integer codisc_at(const CurveFamily &family, std::span<const Integer> t,
                  const MacaulayOptions &options = {});

/// Bundled families:
///   standard-hyperelliptic-1, -2   all curves y^2 = F(x, z), deg F = 2g + 2
///   isotrivial-3, -5, -7           y^2 = x^l + t
///   twist                          t y^2 = x^3 + x + 1, as Y^2 = t (x^3 + x + 1)
///   qm                             y^2 = (x^2+2x-2)(x^4+4x^3+(2t^2-8)x-t^2+4)
///   standard-plane-cubic           all plane cubics
std::vector<CurveFamily> bundled_fixtures();
/// Throws ConfigError for unknown names.
CurveFamily bundled_fixture(std::string_view name);
CurveFamily standard_hyperelliptic_family(unsigned genus);
CurveFamily isotrivial_family(unsigned ell);
CurveFamily standard_plane_family(unsigned degree);

/// x^d + y^d - x y z^(d-2): singular at (0:0:1) with a node there.
TernaryForm nodal_origin_form(unsigned degree);

CurveFamily family_from_json(const nlohmann::json &j);
nlohmann::json family_to_json(const CurveFamily &family);
/// Reads a JSON family file; I/O and schema problems raise ConfigError.
CurveFamily load_family(const std::filesystem::path &path);

struct HypothesisReport {
  std::size_t samples = 0;
  std::size_t degenerate = 0;
  /// gcd of the nonzero sampled discriminants.
  Integer fixed_divisor = 0;
  bool disc_constant = false;
  bool codisc_identically_zero = false;
  /// gcd over samples of gcd(disc, codisc); a prime > A here means the two
  /// are probably not coprime.
  Integer common_codisc_divisor = 0;
  /// No sample had a prime > A dividing disc exactly once.
  bool looks_squarefull = false;
  std::vector<std::string> warnings;
};

/// Numeric spot check of the family hypotheses on random points of a small box.
HypothesisReport spot_check_hypotheses(const CurveFamily &family, std::uint64_t seed,
                                       std::size_t samples = 24, unsigned radius = 50);

} // namespace semistable
