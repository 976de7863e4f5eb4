#include "semistable/integer_arith.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>

namespace semistable {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Bound of the first, cheap trial-division pass. Pieces left after it are
// handed to Miller-Rabin and Pollard-Brent; the remaining range up to the
// configured bound is only scanned for cofactors that rho could not split.
constexpr std::uint32_t kQuickTrialBound = 4096;

constexpr std::uint32_t kFirstPrimes[] = {2,  3,  5,  7,  11, 13, 17,
                                          19, 23, 29, 31, 37, 41};

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(u128(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp) {
    if (exp & 1)
      result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

bool fits_u64(const Integer &n) { return mpz_sizeinbase(n.get_mpz_t(), 2) <= 64; }

u64 to_u64(const Integer &n) {
  u64 value = 0;
  mpz_export(&value, nullptr, -1, sizeof(value), 0, 0, n.get_mpz_t());
  return value;
}

Integer from_u64(u64 v) {
  Integer out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

bool miller_rabin_round(u64 n, u64 d, unsigned s, u64 a) {
  a %= n;
  if (a == 0)
    return true;
  u64 x = powmod(a, d, n);
  if (x == 1 || x == n - 1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = mulmod(x, x, n);
    if (x == n - 1)
      return true;
  }
  return false;
}

bool miller_rabin_round(const Integer &n, const Integer &d, unsigned s,
                        const Integer &a) {
  const Integer n_minus_1 = n - 1;
  Integer x;
  mpz_powm(x.get_mpz_t(), a.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1)
    return true;
  for (unsigned r = 1; r < s; ++r) {
    x = x * x % n;
    if (x == n_minus_1)
      return true;
  }
  return false;
}

u64 gcd_u64(u64 a, u64 b) {
  while (b) {
    a %= b;
    std::swap(a, b);
  }
  return a;
}

// Montgomery arithmetic modulo an odd n. Products stay scaled by a power of
// R, which is harmless for rho since only gcds with n are ever taken.
struct Montgomery64 {
  using Word = u64;
  u64 n, inv;
  explicit Montgomery64(u64 modulus) : n(modulus), inv(modulus) {
    for (int i = 0; i < 6; ++i)
      inv *= 2 - n * inv;
  }
  u64 reduce(u128 t) const {
    const u64 m = static_cast<u64>(t) * -inv;
    const u128 sum = t + u128(m) * n;
    u64 r = static_cast<u64>(sum >> 64);
    // t + m n can carry out of 128 bits when n >= 2^63.
    if (sum < t || r >= n)
      r -= n;
    return r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(u128(a) * b); }
  u64 add(u64 a, u64 b) const {
    const u64 s = a + b;
    return (s < a || s >= n) ? s - n : s;
  }
  u64 absdiff(u64 a, u64 b) const { return a > b ? a - b : b - a; }
  u64 gcd_with_n(u64 a) const { return gcd_u64(a, n); }
};

// Same for odd n < 2^127, so the reduction never overflows 128 bits.
struct Montgomery128 {
  using Word = u128;
  u128 n, inv;
  explicit Montgomery128(u128 modulus) : n(modulus), inv(modulus) {
    for (int i = 0; i < 7; ++i)
      inv *= 2 - n * inv;
  }
  static void wide_mul(u128 a, u128 b, u128 &hi, u128 &lo) {
    const u128 a0 = static_cast<u64>(a), a1 = a >> 64;
    const u128 b0 = static_cast<u64>(b), b1 = b >> 64;
    const u128 p00 = a0 * b0, p01 = a0 * b1, p10 = a1 * b0, p11 = a1 * b1;
    const u128 mid = (p00 >> 64) + static_cast<u64>(p01) + static_cast<u64>(p10);
    lo = (mid << 64) | static_cast<u64>(p00);
    hi = p11 + (p01 >> 64) + (p10 >> 64) + (mid >> 64);
  }
  u128 mul(u128 a, u128 b) const {
    u128 hi, lo, mhi, mlo;
    wide_mul(a, b, hi, lo);
    const u128 m = lo * -inv;
    wide_mul(m, n, mhi, mlo);
    u128 r = hi + mhi + (lo != 0 ? 1 : 0);
    if (r >= n)
      r -= n;
    return r;
  }
  u128 add(u128 a, u128 b) const {
    const u128 s = a + b;
    return s >= n ? s - n : s;
  }
  u128 absdiff(u128 a, u128 b) const { return a > b ? a - b : b - a; }
  u128 gcd_with_n(u128 a) const {
    u128 x = n;
    while (a) {
      x %= a;
      std::swap(x, a);
    }
    return x;
  }
};

// Brent's variant of Pollard rho on an odd modulus. Returns a nontrivial
// factor or 0 once `budget` polynomial evaluations have been spent.
template <typename Arith> typename Arith::Word brent_rho(const Arith &ar, u64 &budget) {
  using W = typename Arith::Word;
  constexpr u64 kBatch = 128;
  for (W c = 1; budget > 0; ++c) {
    auto step = [&](W v) { return ar.add(ar.mul(v, v), c); };
    W y = 2, x = 2, ys = 2, q = 1, g = 1;
    for (u64 r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i)
        y = step(y);
      budget = budget > r ? budget - r : 0;
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          y = step(y);
          q = ar.mul(q, ar.absdiff(x, y));
        }
        budget = budget > lim ? budget - lim : 0;
        g = ar.gcd_with_n(q);
      }
    }
    if (g == ar.n || g == 0) {
      do {
        ys = step(ys);
        g = ar.gcd_with_n(ar.absdiff(x, ys));
      } while (g == 1);
    }
    if (g != 1 && g != ar.n)
      return g;
  }
  return 0;
}

Integer brent_rho(const Integer &n, u64 &budget) {
  if (mpz_even_p(n.get_mpz_t()))
    return 2;
  constexpr u64 kBatch = 128;
  Integer y, x, ys, q, g, diff;
  for (unsigned long c = 1; budget > 0; ++c) {
    auto step = [&](Integer &v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    y = 2;
    x = 2;
    ys = 2;
    q = 1;
    g = 1;
    for (u64 r = 1; g == 1 && budget > 0; r <<= 1) {
      x = y;
      for (u64 i = 0; i < r; ++i)
        step(y);
      budget = budget > r ? budget - r : 0;
      for (u64 k = 0; k < r && g == 1; k += kBatch) {
        ys = y;
        const u64 lim = std::min(kBatch, r - k);
        for (u64 i = 0; i < lim; ++i) {
          step(y);
          diff = x - y;
          q = q * diff;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        budget = budget > lim ? budget - lim : 0;
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
    }
    if (g == n) {
      do {
        step(ys);
        diff = x - ys;
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != 1 && g != n)
      return g;
  }
  return 0;
}

Integer split(const Integer &n, u64 &budget) {
  if (mpz_even_p(n.get_mpz_t()))
    return 2;
  const auto bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits <= 64)
    return from_u64(brent_rho(Montgomery64(to_u64(n)), budget));
  if (bits <= 126) {
    u64 limbs[2] = {0, 0};
    mpz_export(limbs, nullptr, -1, sizeof(u64), 0, 0, n.get_mpz_t());
    const u128 factor = brent_rho(Montgomery128((u128(limbs[1]) << 64) | limbs[0]), budget);
    const u64 out[2] = {static_cast<u64>(factor), static_cast<u64>(factor >> 64)};
    Integer result;
    mpz_import(result.get_mpz_t(), 2, -1, sizeof(u64), 0, 0, out);
    return result;
  }
  return brent_rho(n, budget);
}

// If n = r^k with k >= 2, returns (r, k) for the smallest such k.
std::pair<Integer, unsigned> perfect_power(const Integer &n) {
  if (!mpz_perfect_power_p(n.get_mpz_t()))
    return {n, 1};
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
  Integer root;
  for (unsigned k = 2; k <= bits; ++k) {
    if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0)
      return {root, k};
  }
  return {n, 1};
}

} // namespace

std::span<const std::uint32_t> primes_below(std::uint32_t bound) {
  static std::mutex mutex;
  static std::map<std::uint32_t, std::unique_ptr<std::vector<std::uint32_t>>> cache;
  std::lock_guard lock(mutex);
  auto &slot = cache[bound];
  if (!slot) {
    std::vector<bool> composite(bound, false);
    auto primes = std::make_unique<std::vector<std::uint32_t>>();
    for (std::uint64_t i = 2; i < bound; ++i) {
      if (composite[i])
        continue;
      primes->push_back(static_cast<std::uint32_t>(i));
      for (std::uint64_t j = i * i; j < bound; j += i)
        composite[j] = true;
    }
    slot = std::move(primes);
  }
  return *slot;
}

bool is_prime(std::uint64_t n) {
  if (n < 2)
    return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0)
      return n == p;
  }
  u64 d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // The first twelve prime bases are deterministic far beyond 2^64.
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (!miller_rabin_round(n, d, s, a))
      return false;
  }
  return true;
}

bool is_prime(const Integer &n) {
  if (n < 2)
    return false;
  if (fits_u64(n))
    return is_prime(to_u64(n));
  for (std::uint32_t p : primes_below(1000)) {
    if (mpz_divisible_ui_p(n.get_mpz_t(), p))
      return false;
  }
  Integer d = n - 1;
  const unsigned s = static_cast<unsigned>(mpz_scan1(d.get_mpz_t(), 0));
  mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
  for (std::uint32_t a : kFirstPrimes) {
    if (!miller_rabin_round(n, d, s, Integer(a)))
      return false;
  }
  static const Integer kDeterministicBelow("3317044064679887385961981");
  if (n < kDeterministicBelow)
    return true;
  std::mt19937_64 rng(0x5eed5eedULL);
  const Integer span = n - 3;
  Integer a;
  for (int round = 0; round < 51; ++round) {
    Integer raw = 0;
    for (int limb = 0; limb < 4; ++limb) {
      raw <<= 64;
      raw += from_u64(rng());
    }
    a = raw % span + 2;
    if (!miller_rabin_round(n, d, s, a))
      return false;
  }
  return true;
}

Integer Factorization::reconstruct() const {
  Integer out = residual;
  Integer power;
  for (const auto &[p, e] : factors) {
    mpz_pow_ui(power.get_mpz_t(), p.get_mpz_t(), e);
    out *= power;
  }
  return sign < 0 ? Integer(-out) : out;
}

unsigned Factorization::exponent_of(const Integer &p) const {
  auto it = std::lower_bound(
      factors.begin(), factors.end(), p,
      [](const PrimePower &pp, const Integer &key) { return pp.prime < key; });
  return (it != factors.end() && it->prime == p) ? it->exponent : 0;
}

Factorization factorize(const Integer &n, const FactorizationBudget &budget) {
  if (n == 0)
    throw std::invalid_argument("factorize: zero has no factorization");
  Factorization out;
  out.sign = sgn(n) < 0 ? -1 : 1;
  Integer m = abs(n);
  std::map<Integer, unsigned> found;

  const std::uint32_t quick_bound = std::min(kQuickTrialBound, budget.trial_division_bound);
  for (std::uint32_t p : primes_below(quick_bound)) {
    if (Integer(p) * p > m)
      break;
    if (!mpz_divisible_ui_p(m.get_mpz_t(), p))
      continue;
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    found[Integer(p)] += e;
  }

  const Integer quick_square = Integer(quick_bound) * quick_bound;
  std::vector<std::pair<Integer, unsigned>> pending;
  if (m > 1)
    pending.emplace_back(m, 1);
  while (!pending.empty()) {
    auto [c, mult] = std::move(pending.back());
    pending.pop_back();
    if (c == 1)
      continue;
    // Every pending piece is free of primes below quick_bound.
    if (c < quick_square || is_prime(c)) {
      found[c] += mult;
      continue;
    }
    if (auto [root, k] = perfect_power(c); k > 1) {
      pending.emplace_back(root, mult * k);
      continue;
    }
    std::uint64_t rho_budget = budget.rho_iterations;
    if (Integer d = split(c, rho_budget); d != 0) {
      pending.emplace_back(d, mult);
      pending.emplace_back(Integer(c / d), mult);
      continue;
    }
    // Rho gave up: finish trial division up to the configured bound.
    bool progressed = false;
    for (std::uint32_t p : primes_below(budget.trial_division_bound)) {
      if (p < quick_bound)
        continue;
      if (Integer(p) * p > c)
        break;
      while (mpz_divisible_ui_p(c.get_mpz_t(), p)) {
        mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), p);
        found[Integer(p)] += mult;
        progressed = true;
      }
    }
    if (progressed) {
      pending.emplace_back(c, mult);
      continue;
    }
    Integer power;
    mpz_pow_ui(power.get_mpz_t(), c.get_mpz_t(), mult);
    out.residual *= power;
  }

  out.factors.reserve(found.size());
  for (auto &[p, e] : found)
    out.factors.push_back({p, e});
  return out;
}

unsigned valuation(const Integer &n, const Integer &p) {
  if (n == 0)
    throw std::invalid_argument("valuation: n must be nonzero");
  if (p < 2)
    throw std::invalid_argument("valuation: p must be a prime");
  Integer rest;
  return static_cast<unsigned>(
      mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

} // namespace semistable
