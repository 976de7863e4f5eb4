#include "semistable/omega_stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "semistable/errors.hpp"

namespace semistable {

ClassCounts OmegaRecord::class_counts() const {
  ClassCounts counts{};
  for (const auto &v : verdicts)
    ++counts[static_cast<std::size_t>(v.cls)];
  return counts;
}

OmegaRecord omega_of(const CurveFamily &family, const Specialization &s, CountingMode mode,
                     double box, const FactorizationBudget &budget) {
  if (s.degenerate())
    throw DegenerateInputError("degenerate specialization excluded by disc(t) != 0");
  const bool weak = mode != CountingMode::MinimallyBad;
  if (weak && !s.codisc)
    throw std::invalid_argument("omega_of: weak counting needs the exclusion divisor");

  OmegaRecord rec;
  rec.t = s.point;
  const Factorization fac = factorize(s.disc, budget);
  for (const auto &[p, v] : fac.factors) {
    const bool coprime_to_codisc = s.codisc && *s.codisc != 0 &&
                                   !mpz_divisible_p(s.codisc->get_mpz_t(), p.get_mpz_t());
    PrimeVerdict verdict;
    try {
      if (family.kind == FamilyKind::Hyperelliptic)
        verdict = classify_hyperelliptic_prime(s.binary(), p, family.cutoff, v, coprime_to_codisc);
      else
        verdict = classify_plane_prime(s.ternary(), p, family.cutoff, v, coprime_to_codisc);
    } catch (const DegenerateInputError &) {
      verdict.prime = p;
      verdict.v_disc = v;
      verdict.cls = ReductionClass::NotSemistableOrUnknown;
    }
    rec.verdicts.push_back(std::move(verdict));

    if (p <= family.cutoff)
      continue;
    if (weak && !coprime_to_codisc)
      continue;
    ++rec.omega;
    if (v == 1)
      ++rec.omega1;
  }
  if (!fac.complete()) {
    rec.residual_present = true;
    PrimeVerdict verdict;
    verdict.prime = fac.residual;
    verdict.cls = ReductionClass::ResidualUnknown;
    rec.verdicts.push_back(std::move(verdict));
  }
  rec.headline = weak ? rec.omega : rec.omega1;
  rec.normalized = ek_normalize(rec.headline, family.declared_c, box);
  return rec;
}

OmegaRecord omega_of(const CurveFamily &family, std::span<const Integer> t, CountingMode mode,
                     double box, const MacaulayOptions &options,
                     const FactorizationBudget &budget) {
  const Specialization s = specialize(family, t, mode != CountingMode::MinimallyBad, options);
  return omega_of(family, s, mode, box, budget);
}

double ek_normalize(double omega, unsigned c, double box) {
  if (!(box >= 16))
    throw std::invalid_argument("ek_normalize: B must be at least 16");
  if (c < 1)
    throw std::invalid_argument("ek_normalize: c must be at least 1");
  const double centre = c * std::log(std::log(box));
  return (omega - centre) / std::sqrt(centre);
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_distance(std::span<const double> samples) {
  if (samples.empty())
    throw std::invalid_argument("ks_distance: empty sample");
  std::vector<double> sorted(samples.begin(), samples.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double best = 0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double phi = normal_cdf(sorted[i]);
    best = std::max({best, std::abs((i + 1) / n - phi), std::abs(i / n - phi)});
  }
  return best;
}

double moment(std::span<const double> samples, unsigned k) {
  if (samples.empty())
    throw std::invalid_argument("moment: empty sample");
  if (k < 1 || k > 4)
    throw std::invalid_argument("moment: order must be 1..4");
  double sum = 0;
  for (double x : samples)
    sum += std::pow(x, static_cast<int>(k));
  return sum / static_cast<double>(samples.size());
}

unsigned omega_threshold(double box) {
  if (!(box >= 16))
    throw std::invalid_argument("omega_threshold: B must be at least 16");
  const double ll = std::log(std::log(box));
  return static_cast<unsigned>(std::ceil(ll / std::log(ll)));
}

double threshold_proportion(std::span<const unsigned> counts, double box) {
  if (counts.empty())
    throw std::invalid_argument("threshold_proportion: empty input");
  const unsigned threshold = omega_threshold(box);
  const auto hits = std::count_if(counts.begin(), counts.end(),
                                  [threshold](unsigned w) { return w >= threshold; });
  return static_cast<double>(hits) / static_cast<double>(counts.size());
}

namespace {

std::uint64_t residue_count(const CurveFamily &family, std::uint32_t p) {
  std::uint64_t total = 1;
  for (unsigned i = 0; i < family.num_params; ++i) {
    total *= p;
    if (total > kResidueBudget)
      throw std::invalid_argument("residue_density: p^n = " + std::to_string(p) + "^" +
                                  std::to_string(family.num_params) +
                                  " exceeds the enumeration budget");
  }
  return total;
}

// Number of t in [-B, B] with t = r mod p.
Integer class_size(std::uint64_t box, std::uint32_t p, std::uint32_t r) {
  // Shift to [0, 2B]: t + B = r + B mod p.
  const std::uint64_t width = 2 * box + 1;
  const std::uint64_t first = (r + box) % p;
  if (first >= width)
    return 0;
  return static_cast<unsigned long>((width - 1 - first) / p + 1);
}

} // namespace

std::vector<std::vector<std::uint32_t>> residue_roots(const CurveFamily &family, std::uint32_t p,
                                                      const MacaulayOptions &options) {
  if (p < 2 || !is_prime(static_cast<std::uint64_t>(p)))
    throw std::invalid_argument("residue_roots: p must be prime");
  const std::uint64_t total = residue_count(family, p);
  const unsigned n = family.num_params;
  std::vector<std::vector<std::uint32_t>> roots;
  std::vector<std::uint32_t> digits(n, 0);
  std::vector<Integer> t(n);
  for (std::uint64_t index = 0; index < total; ++index) {
    std::uint64_t rest = index;
    for (unsigned i = 0; i < n; ++i) {
      digits[n - 1 - i] = static_cast<std::uint32_t>(rest % p);
      rest /= p;
    }
    for (unsigned i = 0; i < n; ++i)
      t[i] = digits[i];
    Integer d;
    try {
      d = disc_at(family, t, options);
    } catch (const DegenerateInputError &) {
      d = 0;
    }
    if (mpz_divisible_ui_p(d.get_mpz_t(), p))
      roots.push_back(digits);
  }
  return roots;
}

ResidueDensity residue_density(const CurveFamily &family, std::uint32_t p, std::uint64_t box,
                               const MacaulayOptions &options) {
  ResidueDensity out;
  out.prime = p;
  out.residues = residue_count(family, p);
  const auto roots = residue_roots(family, p, options);
  out.roots = roots.size();
  out.rho = static_cast<double>(out.roots) / static_cast<double>(out.residues);

  std::vector<Integer> sizes(p);
  for (std::uint32_t r = 0; r < p; ++r)
    sizes[r] = class_size(box, p, r);
  Integer hits = 0;
  for (const auto &root : roots) {
    Integer weight = 1;
    for (std::uint32_t r : root)
      weight *= sizes[r];
    hits += weight;
  }
  Integer volume;
  mpz_ui_pow_ui(volume.get_mpz_t(), 2 * box + 1, family.num_params);
  const mpq_class share(hits, volume);
  out.box_density = share.get_d();
  out.box_deviation = std::abs(out.box_density - out.rho);
  return out;
}

} // namespace semistable
