#include <doctest.h>

#include <random>

#include "semistable/macaulay.hpp"
#include "semistable/reduction.hpp"

using namespace semistable;

namespace {

TernaryForm tf(std::string_view text) { return TernaryForm::parse(text); }

TernaryForm random_form(std::mt19937_64 &rng, unsigned degree, int bound) {
  TernaryForm f(degree);
  while (f.is_zero())
    for (const auto &m : ternary_monomials(degree))
      f.add_term(m, static_cast<long>(rng() % (2 * bound + 1)) - bound);
  return f;
}

TernaryForm scaled(const TernaryForm &f, long lambda) {
  TernaryForm c(0);
  c.add_term({0, 0, 0}, lambda);
  return c * f;
}

Matrix3 random_unimodular(std::mt19937_64 &rng) {
  Matrix3 m{};
  for (int i = 0; i < 3; ++i)
    m[i][i] = 1;
  // Products of elementary matrices, with an occasional sign flip.
  for (int k = 0; k < 6; ++k) {
    const int i = static_cast<int>(rng() % 3);
    int j = static_cast<int>(rng() % 3);
    if (i == j)
      j = (j + 1) % 3;
    const long a = static_cast<long>(rng() % 5) - 2;
    for (int c = 0; c < 3; ++c)
      m[i][c] += a * m[j][c];
  }
  if (rng() % 2)
    for (int c = 0; c < 3; ++c)
      m[0][c] = -m[0][c];
  return m;
}

} // namespace

TEST_CASE("hessian_minor_xy examples") {
  CHECK(hessian_minor_xy(tf("x^3+y^3+z^3")) == tf("36x*y"));
  CHECK(hessian_minor_xy(tf("x*y*z")) == tf("-z^2"));
  CHECK(hessian_minor_xy(tf("x^3+y^3-x*y*z")) == tf("36x*y - z^2"));
  CHECK_THROWS_AS(hessian_minor_xy(tf("x+y")), std::invalid_argument);
}

TEST_CASE("macaulay_resultant examples") {
  CHECK(macaulay_resultant(tf("x"), tf("y"), tf("z")) == 1);
  CHECK(macaulay_resultant(tf("3x^2-y*z"), tf("3y^2-x*z"), tf("-x*y")) == 0);
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 3, 12);
  CHECK(macaulay_resultant(tf("3x^2"), tf("3y^2"), tf("3z^2")) == expected);
  CHECK(macaulay_resultant(tf("x^2"), tf("y^3"), tf("z^4")) == 1);
  CHECK_THROWS_AS(macaulay_resultant(TernaryForm(2), tf("y"), tf("z")), DegenerateInputError);
}

TEST_CASE("macaulay_resultant of linear forms is the determinant") {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 50; ++i) {
    IntMatrix m(3, 3);
    std::array<TernaryForm, 3> g{TernaryForm(1), TernaryForm(1), TernaryForm(1)};
    for (std::size_t r = 0; r < 3; ++r)
      for (unsigned c = 0; c < 3; ++c) {
        m(r, c) = static_cast<long>(rng() % 11) - 5;
        Monomial3 mono{0, 0, 0};
        mono[c] = 1;
        g[r].add_term(mono, m(r, c));
      }
    if (g[0].is_zero() || g[1].is_zero() || g[2].is_zero())
      continue;
    CHECK(macaulay_resultant(g[0], g[1], g[2]) == bareiss_determinant(m));
  }
}

TEST_CASE("plane_disc_proxy examples") {
  CHECK(plane_disc_proxy(tf("x^3+y^3-x*y*z")) == 0);
  Integer expected;
  mpz_ui_pow_ui(expected.get_mpz_t(), 3, 12);
  CHECK(plane_disc_proxy(tf("x^3+y^3+z^3")) == expected);
  CHECK(plane_disc_proxy(tf("x*y*z")) == 0);
}

TEST_CASE("transversality_resultant examples") {
  CHECK(transversality_resultant(tf("x^3+y^3-x*y*z")) != 0);
  CHECK(transversality_resultant(tf("y^2*z-x^3")) == 0);
  // f_x, f_y and H_xy all vanish at (0:0:1), which is off the curve.
  CHECK(transversality_resultant(tf("x^3+y^3+z^3")) == 0);
  CHECK_THROWS_AS(transversality_resultant(tf("z^3 + x*z^2")), ZeroHessianMinorError);
  CHECK_THROWS_AS(transversality_resultant(tf("x*z")), std::invalid_argument);
}

TEST_CASE("multihomogeneity on random quadric triples") {
  std::mt19937_64 rng(43);
  for (int i = 0; i < 40; ++i) {
    const auto g1 = random_form(rng, 2, 3), g2 = random_form(rng, 2, 3), g3 = random_form(rng, 2, 3);
    const long lambda = static_cast<long>(rng() % 5) + 2;
    Integer factor;
    mpz_ui_pow_ui(factor.get_mpz_t(), static_cast<unsigned long>(lambda), 4);
    CHECK(macaulay_resultant(scaled(g1, lambda), g2, g3) == factor * macaulay_resultant(g1, g2, g3));
  }
}

TEST_CASE("vanishing is invariant under unimodular substitutions") {
  std::mt19937_64 rng(47);
  int zeros = 0;
  for (int i = 0; i < 40; ++i) {
    auto g1 = random_form(rng, 2, 2), g2 = random_form(rng, 2, 2), g3 = random_form(rng, 1, 2);
    if (i % 2 == 0) {
      // Force a common zero at (1 : 0 : 0) by clearing the pure-x terms.
      g1.add_term({2, 0, 0}, -g1.coefficient({2, 0, 0}));
      g2.add_term({2, 0, 0}, -g2.coefficient({2, 0, 0}));
      g3.add_term({1, 0, 0}, -g3.coefficient({1, 0, 0}));
      if (g1.is_zero() || g2.is_zero() || g3.is_zero())
        continue;
    }
    const Matrix3 m = random_unimodular(rng);
    const Integer before = macaulay_resultant(g1, g2, g3);
    const Integer after = macaulay_resultant(g1.compose(m), g2.compose(m), g3.compose(m));
    zeros += before == 0;
    CHECK((before == 0) == (after == 0));
    CHECK(abs(before) == abs(after));
  }
  CHECK(zeros >= 15);
}

TEST_CASE("singular cubics mod p are detected by the proxy") {
  // D(f) = 0 mod p iff the reduction is singular over the closure, seen
  // over F_p, F_p^2 or F_p^3 for cubics.
  std::mt19937_64 rng(53);
  int singular = 0;
  for (int i = 0; i < 200; ++i) {
    const auto f = random_form(rng, 3, 6);
    const std::uint32_t p = i % 2 ? 5 : 7;
    const Integer d = plane_disc_proxy(f);
    if (f.reduced_mod(p).is_zero())
      continue;
    bool found = false;
    for (unsigned e = 1; e <= 3 && !found; ++e)
      found = !singular_points_fp(f, p, e).empty();
    singular += found;
    const bool proxy_zero = mpz_divisible_ui_p(d.get_mpz_t(), p) != 0;
    CHECK(proxy_zero == found);
  }
  CHECK(singular > 0);
}
