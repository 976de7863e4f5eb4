#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "semistable/errors.hpp"
#include "semistable/macaulay.hpp"
#include "semistable/reduction.hpp"

using namespace semistable;

namespace {

TernaryForm tf(std::string_view text) { return TernaryForm::parse(text); }

BinaryForm bf(std::string_view f_of_x, unsigned degree) {
  return homogenize_binary(parse_polynomial(f_of_x, {"x"}), degree);
}

BinaryForm random_sextic(std::mt19937_64 &rng, int bound) {
  Coefficients c(7);
  for (auto &a : c)
    a = static_cast<long>(rng() % (2 * bound + 1)) - bound;
  return BinaryForm(6, c);
}

TernaryForm random_cubic(std::mt19937_64 &rng, int bound) {
  TernaryForm f(3);
  while (f.is_zero())
    for (const auto &m : ternary_monomials(3))
      f.add_term(m, static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return f;
}

unsigned double_roots_from_factorization(const BinaryForm &form, const Integer &p) {
  const FpPoly f(p, form.coefficients);
  unsigned count = form.degree - static_cast<unsigned>(f.degree()) == 2 ? 1 : 0;
  for (const auto &[g, m] : fp_factorize(f))
    if (m == 2)
      count += static_cast<unsigned>(g.degree());
  return count;
}

} // namespace

TEST_CASE("reduction class names round-trip") {
  for (ReductionClass c : kAllReductionClasses)
    CHECK(reduction_class_from_string(to_string(c)) == c);
  CHECK_THROWS_AS(reduction_class_from_string("Bogus"), std::invalid_argument);
}

TEST_CASE("multiplicity_profile examples") {
  const auto prof = multiplicity_profile(bf("(x-1)^2*(x-2)", 6), 101);
  CHECK(prof.factors == std::vector<std::pair<unsigned, unsigned>>{{1, 1}, {1, 2}});
  CHECK(prof.infinity_multiplicity == 3);
  CHECK(prof.double_root_count() == 1);
  CHECK(prof.max_multiplicity() == 3);

  const auto squarefree = multiplicity_profile(bf("x^5 + x + 1", 6), 101);
  CHECK(squarefree.max_multiplicity() == 1);

  std::mt19937_64 rng(71);
  for (int i = 0; i < 30; ++i) {
    // h^2 for a random squarefree cubic h mod 101.
    Coefficients h(4);
    for (auto &a : h)
      a = static_cast<long>(rng() % 101);
    h[3] = 1 + static_cast<long>(rng() % 100);
    const FpPoly hp(101, h);
    if (gcd(hp, hp.derivative()).degree() > 0)
      continue;
    const FpPoly sq = hp * hp;
    const auto prof2 = multiplicity_profile(BinaryForm(6, sq.coefficients()), 101);
    CHECK(prof2.all_even());
    CHECK(prof2.double_root_count() == 3);
  }

  CHECK_THROWS_AS(multiplicity_profile(bf("x^3+1", 6), 5), std::invalid_argument);
  CHECK_THROWS_AS(multiplicity_profile(bf("11x^3+11", 6), 11), DegenerateInputError);
}

TEST_CASE("profile degrees add up to the formal degree") {
  std::mt19937_64 rng(73);
  for (int i = 0; i < 200; ++i) {
    const auto f = random_sextic(rng, 30);
    const Integer p = 11 + 2 * (i % 10);
    if (!is_prime(p) || FpPoly(p, f.coefficients).is_zero())
      continue;
    const auto prof = multiplicity_profile(f, p);
    unsigned total = prof.infinity_multiplicity;
    for (const auto &[d, m] : prof.factors)
      total += d * m;
    CHECK(total == 6);
  }
}

TEST_CASE("toric_rank") {
  CHECK(toric_rank(1, 1) == 1);
  CHECK(toric_rank(0, 1) == 0);
  for (int g = 1; g <= 4; ++g)
    CHECK(toric_rank(g + 1, 2) == g);
  CHECK_THROWS_AS(toric_rank(-1, 1), std::invalid_argument);
  CHECK_THROWS_AS(toric_rank(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(toric_rank(0, 2), std::invalid_argument);
}

TEST_CASE("classify_hyperelliptic_prime examples") {
  const auto f = bf("x^3+x+1", 4);
  auto v = classify_hyperelliptic_prime(f, 31, 4, 1, true);
  CHECK(v.cls == ReductionClass::MinimallyBad);
  CHECK(v.toric_rank == 1);
  CHECK(v.nodes == 1u);
  CHECK(v.components == 1u);
  CHECK(v.tamagawa_one);

  v = classify_hyperelliptic_prime(f, 7, 4, 0, true);
  CHECK(v.cls == ReductionClass::Good);
  v = classify_hyperelliptic_prime(f, 3, 4, 0, true);
  CHECK(v.cls == ReductionClass::SmallPrimeExcluded);

  // F = h^2 + 13 r with h squarefree mod 13: three double roots, two components.
  const auto h = parse_polynomial("x^3 + 2x + 5", {"x"});
  const auto F = h * h + parse_polynomial("13*(x^4 + x + 1)", {"x"});
  const auto form = homogenize_binary(F, 6);
  const unsigned vd = valuation(discriminant(form), 13);
  REQUIRE(vd >= 2);
  v = classify_hyperelliptic_prime(form, 13, 6, vd, false);
  CHECK(v.cls == ReductionClass::BadSemistableNodal);
  CHECK(v.nodes == 3u);
  CHECK(v.components == 2u);
  CHECK(v.toric_rank == 2);

  // A triple root is not semistable and contradicts a unit codiscriminant.
  const auto triple = bf("(x-1)^3*(x^2+x+5)", 6);
  v = classify_hyperelliptic_prime(triple, 101, 6, 5, false);
  CHECK(v.cls == ReductionClass::NotSemistableOrUnknown);
  CHECK_THROWS_AS(classify_hyperelliptic_prime(triple, 101, 6, 5, true), std::invalid_argument);
  CHECK_THROWS_AS(classify_hyperelliptic_prime(bf("11x^3+11", 4), 11, 4, 3, false),
                  DegenerateInputError);
}

TEST_CASE("verdicts on random sextics") {
  std::mt19937_64 rng(79);
  int minimally_bad = 0;
  for (int i = 0; i < 300; ++i) {
    const auto form = random_sextic(rng, 40);
    const Integer disc = discriminant(form);
    if (disc == 0)
      continue;
    for (const auto &pp : factorize(disc).factors) {
      if (pp.prime <= 6 || FpPoly(pp.prime, form.coefficients).is_zero())
        continue;
      const auto v = classify_hyperelliptic_prime(form, pp.prime, 6, pp.exponent, false);
      if (pp.exponent == 1) {
        ++minimally_bad;
        CHECK(v.cls == ReductionClass::MinimallyBad);
        // Under the general branch the same prime is nodal with one node.
        const auto general = classify_hyperelliptic_prime(form, pp.prime, 6, 2, false);
        CHECK(general.cls == ReductionClass::BadSemistableNodal);
        CHECK(general.nodes == 1u);
        CHECK(general.toric_rank == 1);
      }
      if (v.cls == ReductionClass::BadSemistableNodal) {
        CHECK(*v.nodes >= 1);
        CHECK(*v.components >= 1);
        CHECK(*v.components <= 2);
        CHECK(*v.toric_rank > 0);
        CHECK(*v.toric_rank <= 2);
      }
    }
    const Integer good = 1000003;
    if (!mpz_divisible_p(disc.get_mpz_t(), good.get_mpz_t()))
      CHECK(classify_hyperelliptic_prime(form, good, 6, 0, true).cls == ReductionClass::Good);
  }
  CHECK(minimally_bad > 100);
}

TEST_CASE("node counts agree with the brute-force double-cover scan") {
  std::mt19937_64 rng(83);
  int checked = 0;
  for (int i = 0; i < 120; ++i) {
    const auto form = random_sextic(rng, 50);
    const Integer disc = discriminant(form);
    if (disc == 0)
      continue;
    for (const auto &pp : factorize(disc).factors) {
      if (pp.prime < 11 || pp.prime > 47)
        continue;
      const auto p = static_cast<std::uint32_t>(pp.prime.get_ui());
      if (FpPoly(pp.prime, form.coefficients).is_zero())
        continue;
      const auto prof = multiplicity_profile(form, pp.prime);
      const auto scan = oracle::singular_points_of_double_cover(form, p);
      CHECK(prof.double_root_count() == scan.closure);
      CHECK(prof.double_root_orbits() == scan.orbits);
      CHECK(prof.double_root_count() == double_roots_from_factorization(form, pp.prime));
      ++checked;
    }
  }
  CHECK(checked > 30);
}

TEST_CASE("singular_points_fp examples") {
  auto pts = singular_points_fp(tf("x^3+y^3-x*y*z"), 7, 1);
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].coords[0] == SmallField::Element{0, 0, 0});
  CHECK(pts[0].coords[1] == SmallField::Element{0, 0, 0});
  CHECK(pts[0].coords[2] == SmallField::Element{1, 0, 0});
  CHECK(pts[0].node);

  CHECK(singular_points_fp(tf("x^3+y^3+z^3"), 7, 1).empty());
  CHECK(singular_points_fp(tf("x^3+y^3+z^3"), 7, 2).empty());

  pts = singular_points_fp(tf("y^2*z-x^3"), 7, 1);
  REQUIRE(pts.size() == 1);
  CHECK_FALSE(pts[0].node);

  // Three lines: three nodes.
  pts = singular_points_fp(tf("x*y*z"), 11, 1);
  CHECK(pts.size() == 3);
  for (const auto &pt : pts)
    CHECK(pt.node);

  CHECK_THROWS_AS(singular_points_fp(tf("x^3+y^3+z^3"), 103, 1), std::invalid_argument);
}

TEST_CASE("singular scheme length") {
  CHECK(singular_scheme_length(tf("x^3+y^3-x*y*z"), 7) == 1u);
  CHECK(singular_scheme_length(tf("x^3+y^3+z^3"), 7) == 0u);
  CHECK(singular_scheme_length(tf("y^2*z-x^3"), 7) == 2u);
  CHECK(singular_scheme_length(tf("x*y*z"), 11) == 3u);
  // A double line has a non-isolated singular locus.
  CHECK_FALSE(singular_scheme_length(tf("x^2*y"), 11).has_value());
}

TEST_CASE("classify_plane_prime examples") {
  const auto fermat = tf("x^3+y^3+z^3");
  CHECK(classify_plane_prime(fermat, 7, 6, 0, true).cls == ReductionClass::Good);
  CHECK(classify_plane_prime(fermat, 5, 6, 0, true).cls == ReductionClass::SmallPrimeExcluded);

  // Primes exactly dividing D of random cubics.
  std::mt19937_64 rng(89);
  int seen = 0;
  for (int i = 0; i < 60 && seen < 5; ++i) {
    const auto f = random_cubic(rng, 5);
    const Integer d = plane_disc_proxy(f);
    if (d == 0)
      continue;
    for (const auto &pp : factorize(d).factors) {
      if (pp.exponent != 1 || pp.prime <= 6 || pp.prime > 101)
        continue;
      const auto v = classify_plane_prime(f, pp.prime, 6, 1, false);
      CHECK(v.cls == ReductionClass::MinimallyBad);
      CHECK(v.tamagawa_one);
      CHECK(v.toric_rank == 1);
      ++seen;
    }
  }
  CHECK(seen > 0);

  // Two nodes over F_p: a conic and a secant line.
  const auto conic_line = tf("(x^2 + y^2 - z^2)*x");
  const auto v = classify_plane_prime(conic_line, 7, 6, 2, true);
  CHECK(v.cls == ReductionClass::BadSemistableNodal);
  CHECK(v.nodes == 2u);
  CHECK(v.components == 2u);
  CHECK(v.toric_rank == 1);
  CHECK(classify_plane_prime(conic_line, 7, 6, 2, false).cls ==
        ReductionClass::NotSemistableOrUnknown);
}

TEST_CASE("minimally bad cubics have a single rational node") {
  std::mt19937_64 rng(97);
  int checked = 0;
  for (int i = 0; i < 400 && checked < 40; ++i) {
    const auto f = random_cubic(rng, 8);
    const Integer d = plane_disc_proxy(f);
    if (d == 0)
      continue;
    for (const auto &pp : factorize(d).factors) {
      if (pp.exponent != 1 || pp.prime <= 6 || pp.prime > 101)
        continue;
      const auto p = static_cast<std::uint32_t>(pp.prime.get_ui());
      const auto pts = singular_points_fp(f, p, 1);
      REQUIRE(pts.size() == 1);
      CHECK(pts[0].node);
      CHECK(singular_scheme_length(f, p) == 1u);
      ++checked;
      break;
    }
  }
  CHECK(checked >= 20);
}
