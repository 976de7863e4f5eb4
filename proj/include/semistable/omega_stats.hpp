#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "semistable/family.hpp"
#include "semistable/integer_arith.hpp"
#include "semistable/reduction.hpp"

namespace semistable {

using ClassCounts = std::array<std::uint32_t, kAllReductionClasses.size()>;

struct OmegaRecord {
  std::vector<Integer> t;
  /// Primes p > A dividing the discriminant, minus those the mode excludes.
  unsigned omega = 0;
  /// The subset of those with v_p = 1.
  unsigned omega1 = 0;
  /// The count the mode reports: omega1 for minimally-bad
  /// counting, omega for the weak modes.
  unsigned headline = 0;
  double normalized = 0;
  bool residual_present = false;
  std::vector<PrimeVerdict> verdicts;

  ClassCounts class_counts() const;
};

/// Counts and classifies the bad primes of a non-degenerate specialization.
/// Weak modes need `s.codisc`. `box` is the B used for normalization.
/// Throws DegenerateInputError when the discriminant is 0.
OmegaRecord omega_of(const CurveFamily &family, const Specialization &s, CountingMode mode,
                     double box, const FactorizationBudget &budget = {});
OmegaRecord omega_of(const CurveFamily &family, std::span<const Integer> t, CountingMode mode,
                     double box, const MacaulayOptions &options = {},
                     const FactorizationBudget &budget = {});

/// (omega - c log log B) / sqrt(c log log B). Rejects B < 16 and c < 1.
double ek_normalize(double omega, unsigned c, double box);
double normal_cdf(double x);
/// One-sample Kolmogorov-Smirnov distance to the standard normal.
double ks_distance(std::span<const double> samples);
/// k-th raw moment, 1 <= k <= 4.
double moment(std::span<const double> samples, unsigned k);
/// ceil(log log B / log log log B); rejects B < 16.
unsigned omega_threshold(double box);
/// Share of counts >= omega_threshold(B).
double threshold_proportion(std::span<const unsigned> counts, double box);

struct ResidueDensity {
  std::uint32_t prime = 0;
  /// Residues t mod p (out of p^n) with disc(t) = 0 mod p.
  std::uint64_t roots = 0;
  std::uint64_t residues = 0;
  double rho = 0;
  /// Exact share of the box [-B, B]^n with p | disc(t), zero discriminants
  /// included.
  double box_density = 0;
  double box_deviation = 0;
  /// Share among the points actually evaluated by a run, when available.
  std::optional<double> sampled_density;
  std::optional<double> sampled_deviation;

  bool operator==(const ResidueDensity &) const = default;
};

/// Largest p^n for which residue classes are enumerated.
inline constexpr std::uint64_t kResidueBudget = 10'000'000;

/// Residue roots of disc mod p and the resulting box density. Each point of
/// the box is weighted through its residue class, so the count is exact
/// for any B. Throws std::invalid_argument if p^n exceeds the budget.
ResidueDensity residue_density(const CurveFamily &family, std::uint32_t p, std::uint64_t box,
                               const MacaulayOptions &options = {});
/// Residue tuples (each entry in [0, p)) that are discriminant roots.
std::vector<std::vector<std::uint32_t>> residue_roots(const CurveFamily &family, std::uint32_t p,
                                                      const MacaulayOptions &options = {});

} // namespace semistable
