#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <gmpxx.h>

namespace semistable {

using Integer = mpz_class;

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  bool operator==(const PrimePower &) const = default;
};

/// sign * residual * prod(prime^exponent) == n.
///
/// `residual` is 1 when the factorization is complete. Otherwise it is the
/// product of cofactors that survived the effort budget: composite, larger
/// than 10^6, and free of prime factors below the trial-division bound.
struct Factorization {
  int sign = 1;
  std::vector<PrimePower> factors;
  Integer residual = 1;

  bool complete() const { return residual == 1; }
  Integer reconstruct() const;
  /// Exponent of `p` among the listed factors (0 if absent).
  unsigned exponent_of(const Integer &p) const;
};

struct FactorizationBudget {
  std::uint32_t trial_division_bound = 1'000'000;
  std::uint64_t rho_iterations = 10'000'000;
};

/// Primes below `bound`, sieved once per bound and cached.
std::span<const std::uint32_t> primes_below(std::uint32_t bound);

/// Miller-Rabin with the first 13 prime bases (deterministic below
/// 3.317e24) plus 51 fixed pseudo-random bases above that.
bool is_prime(const Integer &n);
bool is_prime(std::uint64_t n);

/// Throws std::invalid_argument for n == 0.
Factorization factorize(const Integer &n, const FactorizationBudget &budget = {});

/// Largest e with p^e | n. Throws std::invalid_argument if n == 0 or p < 2.
unsigned valuation(const Integer &n, const Integer &p);

} // namespace semistable
