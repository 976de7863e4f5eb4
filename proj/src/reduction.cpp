#include "semistable/reduction.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "semistable/errors.hpp"

namespace semistable {

std::string_view to_string(ReductionClass c) {
  switch (c) {
  case ReductionClass::Good:
    return "Good";
  case ReductionClass::MinimallyBad:
    return "MinimallyBad";
  case ReductionClass::BadSemistableNodal:
    return "BadSemistableNodal";
  case ReductionClass::NotSemistableOrUnknown:
    return "NotSemistableOrUnknown";
  case ReductionClass::SmallPrimeExcluded:
    return "SmallPrimeExcluded";
  case ReductionClass::ResidualUnknown:
    return "ResidualUnknown";
  }
  return "?";
}

ReductionClass reduction_class_from_string(std::string_view name) {
  for (ReductionClass c : kAllReductionClasses)
    if (to_string(c) == name)
      return c;
  throw std::invalid_argument("unknown reduction class '" + std::string(name) + "'");
}

unsigned MultiplicityProfile::max_multiplicity() const {
  unsigned best = infinity_multiplicity;
  for (const auto &[deg, mult] : factors)
    best = std::max(best, mult);
  return best;
}

unsigned MultiplicityProfile::double_root_count() const {
  unsigned count = infinity_multiplicity == 2 ? 1 : 0;
  for (const auto &[deg, mult] : factors)
    if (mult == 2)
      count += deg;
  return count;
}

unsigned MultiplicityProfile::double_root_orbits() const {
  unsigned count = infinity_multiplicity == 2 ? 1 : 0;
  for (const auto &[deg, mult] : factors)
    if (mult == 2)
      ++count;
  return count;
}

bool MultiplicityProfile::all_even() const {
  if (infinity_multiplicity % 2 != 0)
    return false;
  return std::all_of(factors.begin(), factors.end(),
                     [](const auto &f) { return f.second % 2 == 0; });
}

namespace {

FpPoly reduce_form(const BinaryForm &form, const Integer &p) {
  return FpPoly(p, form.coefficients);
}

} // namespace

MultiplicityProfile multiplicity_profile(const BinaryForm &form, const Integer &p) {
  if (p <= form.degree)
    throw std::invalid_argument("multiplicity_profile: p must exceed the form degree");
  const FpPoly f = reduce_form(form, p);
  if (f.is_zero())
    throw DegenerateInputError("multiplicity_profile: form vanishes identically mod p");
  MultiplicityProfile out;
  out.formal_degree = form.degree;
  out.infinity_multiplicity = form.degree - static_cast<unsigned>(f.degree());
  for (const auto &[part, multiplicity] : squarefree_decomposition(f)) {
    for (const auto &[block, d] : distinct_degree_factorization(part)) {
      const unsigned count = static_cast<unsigned>(block.degree()) / d;
      for (unsigned k = 0; k < count; ++k)
        out.factors.emplace_back(d, multiplicity);
    }
  }
  std::sort(out.factors.begin(), out.factors.end());
  unsigned total = out.infinity_multiplicity;
  for (const auto &[deg, mult] : out.factors)
    total += deg * mult;
  if (total != out.formal_degree)
    throw std::logic_error("multiplicity_profile: degrees do not add up");
  return out;
}

int toric_rank(int nodes, int components) {
  if (nodes < 0 || components < 1)
    throw std::invalid_argument("toric_rank: need m >= 0 and c >= 1");
  const int rank = nodes - components + 1;
  if (rank < 0)
    throw std::invalid_argument("toric_rank: m - c + 1 is negative");
  return rank;
}

namespace {

PrimeVerdict minimally_bad(const Integer &p) {
  PrimeVerdict v;
  v.prime = p;
  v.v_disc = 1;
  v.cls = ReductionClass::MinimallyBad;
  v.nodes = 1;
  v.components = 1;
  v.toric_rank = 1;
  v.toric_rank_floor = 1;
  v.tamagawa_one = true;
  v.rational_components = 1;
  return v;
}

} // namespace

PrimeVerdict classify_hyperelliptic_prime(const BinaryForm &form, const Integer &p,
                                          const Integer &cutoff, unsigned v_disc,
                                          bool codisc_unit) {
  if (form.degree < 4 || form.degree % 2 != 0)
    throw std::invalid_argument("classify_hyperelliptic_prime: degree must be 2g + 2 >= 4");
  PrimeVerdict v;
  v.prime = p;
  v.v_disc = v_disc;
  if (p <= cutoff) {
    v.cls = ReductionClass::SmallPrimeExcluded;
    return v;
  }
  const FpPoly reduced = reduce_form(form, p);
  if (reduced.is_zero())
    throw DegenerateInputError("classify_hyperelliptic_prime: form vanishes mod " + p.get_str());
  if (v_disc == 0) {
    v.cls = ReductionClass::Good;
    return v;
  }
  if (v_disc == 1)
    return minimally_bad(p);

  const int genus = static_cast<int>(form.degree) / 2 - 1;
  const MultiplicityProfile profile = multiplicity_profile(form, p);
  if (profile.max_multiplicity() > 2) {
    if (codisc_unit)
      throw std::invalid_argument(
          "classify_hyperelliptic_prime: a triple root contradicts p not dividing the codiscriminant");
    v.cls = ReductionClass::NotSemistableOrUnknown;
    return v;
  }
  const int m = static_cast<int>(profile.double_root_count());
  const int c = profile.all_even() ? 2 : 1;
  v.cls = ReductionClass::BadSemistableNodal;
  v.nodes = static_cast<unsigned>(m);
  v.components = static_cast<unsigned>(c);
  v.toric_rank = toric_rank(m, c);
  v.toric_rank_floor = *v.toric_rank;
  // m < g + 1 leaves one component (toric rank m); m = g + 1 splits the
  // curve into two components y = +-sqrt(u) h (toric rank g).
  if ((m < genus + 1 && *v.toric_rank != m) || (m == genus + 1 && *v.toric_rank != genus))
    throw std::logic_error("classify_hyperelliptic_prime: node bookkeeping inconsistent");
  if (c == 2) {
    const Integer lead = reduced.leading();
    v.rational_components = mpz_legendre(lead.get_mpz_t(), p.get_mpz_t()) == 1 ? 2u : 1u;
  } else {
    v.rational_components = 1;
  }
  return v;
}

PrimeVerdict classify_plane_prime(const TernaryForm &f, const Integer &p, const Integer &cutoff,
                                  unsigned v_disc, bool r_unit) {
  if (f.degree() < 3)
    throw std::invalid_argument("classify_plane_prime: degree must be at least 3");
  PrimeVerdict v;
  v.prime = p;
  v.v_disc = v_disc;
  if (p <= cutoff) {
    v.cls = ReductionClass::SmallPrimeExcluded;
    return v;
  }
  if (f.reduced_mod(p).is_zero())
    throw DegenerateInputError("classify_plane_prime: form vanishes mod " + p.get_str());
  if (v_disc == 0) {
    v.cls = ReductionClass::Good;
    return v;
  }
  if (v_disc == 1)
    return minimally_bad(p);
  if (!r_unit) {
    v.cls = ReductionClass::NotSemistableOrUnknown;
    return v;
  }
  v.cls = ReductionClass::BadSemistableNodal;
  v.toric_rank_floor = 1;
  if (p <= kEnumerationPrimeBudget) {
    const auto length = singular_scheme_length(f, static_cast<std::uint32_t>(p.get_ui()));
    if (length && *length >= 1) {
      v.nodes = *length;
      if (f.degree() == 3 && *length <= 3) {
        v.components = *length;
        v.toric_rank = toric_rank(static_cast<int>(*length), static_cast<int>(*length));
        v.toric_rank_floor = *v.toric_rank;
      }
    }
  }
  return v;
}

namespace {

using Element = SmallField::Element;

struct FieldForm {
  std::vector<std::pair<Monomial3, Element>> terms;
};

FieldForm to_field(const TernaryForm &f, const SmallField &field) {
  FieldForm out;
  for (const auto &[m, c] : f.terms()) {
    Element e = field.from_integer(c);
    if (!SmallField::is_zero(e))
      out.terms.emplace_back(m, e);
  }
  return out;
}

Element evaluate(const FieldForm &f, const std::array<std::vector<Element>, 3> &powers,
                 const SmallField &field) {
  Element sum = field.zero();
  for (const auto &[m, c] : f.terms) {
    Element t = field.mul(c, powers[0][m[0]]);
    t = field.mul(t, powers[1][m[1]]);
    t = field.mul(t, powers[2][m[2]]);
    sum = field.add(sum, t);
  }
  return sum;
}

unsigned rank3(std::array<std::array<Element, 3>, 3> m, const SmallField &field) {
  unsigned rank = 0;
  for (std::size_t col = 0; col < 3 && rank < 3; ++col) {
    std::size_t pivot = rank;
    while (pivot < 3 && SmallField::is_zero(m[pivot][col]))
      ++pivot;
    if (pivot == 3)
      continue;
    std::swap(m[pivot], m[rank]);
    const Element inv = field.inverse(m[rank][col]);
    for (std::size_t r = 0; r < 3; ++r) {
      if (r == rank || SmallField::is_zero(m[r][col]))
        continue;
      const Element factor = field.mul(m[r][col], inv);
      for (std::size_t c = col; c < 3; ++c)
        m[r][c] = field.sub(m[r][c], field.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return rank;
}

} // namespace

std::vector<SingularPoint> singular_points_fp(const TernaryForm &f, std::uint32_t p, unsigned e) {
  if (p > kEnumerationPrimeBudget)
    throw std::invalid_argument("singular_points_fp: p beyond the enumeration budget");
  if (f.degree() < 2)
    throw std::invalid_argument("singular_points_fp: degree must be at least 2");
  const SmallField field(p, e);
  const std::uint64_t q = field.order();
  if (q * q + q + 1 > kEnumerationPointBudget)
    throw std::invalid_argument("singular_points_fp: P^2(F_q) too large to enumerate");

  const unsigned d = f.degree();
  const FieldForm ff = to_field(f, field);
  std::array<FieldForm, 3> grad;
  std::array<std::array<FieldForm, 3>, 3> hess;
  for (unsigned i = 0; i < 3; ++i) {
    const TernaryForm fi = f.partial(i);
    grad[i] = to_field(fi, field);
    for (unsigned j = 0; j < 3; ++j)
      hess[i][j] = fi.degree() > 0 ? to_field(fi.partial(j), field) : FieldForm{};
  }

  std::vector<SingularPoint> out;
  std::array<std::vector<Element>, 3> powers;
  for (auto &pw : powers)
    pw.resize(d + 1);
  auto check = [&](const std::array<Element, 3> &pt) {
    for (std::size_t k = 0; k < 3; ++k) {
      powers[k][0] = field.one();
      for (unsigned i = 1; i <= d; ++i)
        powers[k][i] = field.mul(powers[k][i - 1], pt[k]);
    }
    for (const auto &g : grad)
      if (!SmallField::is_zero(evaluate(g, powers, field)))
        return;
    if (!SmallField::is_zero(evaluate(ff, powers, field)))
      return;
    std::array<std::array<Element, 3>, 3> h;
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j)
        h[i][j] = evaluate(hess[i][j], powers, field);
    out.push_back({pt, rank3(h, field) == 2});
  };

  for (std::uint64_t a = 0; a < q; ++a)
    for (std::uint64_t b = 0; b < q; ++b)
      check({field.one(), field.element(a), field.element(b)});
  for (std::uint64_t b = 0; b < q; ++b)
    check({field.zero(), field.one(), field.element(b)});
  check({field.zero(), field.zero(), field.one()});
  return out;
}

namespace {

// Rank of a dense matrix over F_p, p < 2^32.
std::size_t rank_mod_p(std::vector<std::vector<std::uint64_t>> rows, std::uint64_t p) {
  if (rows.empty())
    return 0;
  const std::size_t cols = rows.front().size();
  auto inverse = [p](std::uint64_t a) {
    std::uint64_t result = 1, base = a % p, k = p - 2;
    while (k) {
      if (k & 1)
        result = result * base % p;
      base = base * base % p;
      k >>= 1;
    }
    return result;
  };
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows.size(); ++col) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][col] == 0)
      ++pivot;
    if (pivot == rows.size())
      continue;
    std::swap(rows[pivot], rows[rank]);
    const std::uint64_t inv = inverse(rows[rank][col]);
    for (auto &x : rows[rank])
      x = x * inv % p;
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      const std::uint64_t factor = rows[r][col];
      if (factor == 0)
        continue;
      for (std::size_t c = col; c < cols; ++c)
        rows[r][c] = (rows[r][c] + (p - factor) * rows[rank][c]) % p;
    }
    ++rank;
  }
  return rank;
}

std::size_t hilbert_function(const std::array<TernaryForm, 3> &gens, unsigned degree,
                             std::uint64_t p) {
  const auto target = ternary_monomials(degree);
  std::map<Monomial3, std::size_t> column;
  for (std::size_t i = 0; i < target.size(); ++i)
    column[target[i]] = i;
  std::vector<std::vector<std::uint64_t>> rows;
  for (const auto &g : gens) {
    if (g.is_zero() || g.degree() > degree)
      continue;
    for (const auto &shift : ternary_monomials(degree - g.degree())) {
      std::vector<std::uint64_t> row(target.size(), 0);
      for (const auto &[m, c] : g.terms()) {
        Integer r;
        mpz_fdiv_r_ui(r.get_mpz_t(), c.get_mpz_t(), p);
        row[column.at({m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]})] = r.get_ui();
      }
      rows.push_back(std::move(row));
    }
  }
  return target.size() - rank_mod_p(std::move(rows), p);
}

} // namespace

std::optional<unsigned> singular_scheme_length(const TernaryForm &f, std::uint32_t p) {
  if (f.degree() < 2)
    throw std::invalid_argument("singular_scheme_length: degree must be at least 2");
  if (f.degree() % p == 0)
    throw std::invalid_argument("singular_scheme_length: p divides the degree");
  const std::array<TernaryForm, 3> gens{f.partial(0), f.partial(1), f.partial(2)};
  const unsigned start = 4 * (f.degree() - 1);
  const std::size_t a = hilbert_function(gens, start, p);
  const std::size_t b = hilbert_function(gens, start + 1, p);
  if (a != b)
    return std::nullopt;
  return static_cast<unsigned>(a);
}

} // namespace semistable
