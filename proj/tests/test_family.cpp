#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "semistable/errors.hpp"
#include "semistable/family.hpp"

using namespace semistable;

namespace {

std::vector<Integer> point(std::initializer_list<long> values) {
  return {values.begin(), values.end()};
}

Integer ipow(long base, unsigned e) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(std::abs(base)), e);
  return base < 0 && e % 2 ? -out : out;
}

} // namespace

TEST_CASE("counting modes and cutoffs") {
  CHECK(parse_counting_mode("minimal", FamilyKind::Plane) == CountingMode::MinimallyBad);
  CHECK(parse_counting_mode("weak", FamilyKind::Plane) == CountingMode::WeakPlane);
  CHECK(parse_counting_mode("weak", FamilyKind::Hyperelliptic) == CountingMode::WeakHyperelliptic);
  CHECK_THROWS_AS(parse_counting_mode("weak-plane", FamilyKind::Hyperelliptic), ConfigError);
  CHECK_THROWS_AS(parse_counting_mode("strong", FamilyKind::Plane), ConfigError);
  CHECK(default_cutoff(FamilyKind::Hyperelliptic, 1) == 4);
  CHECK(default_cutoff(FamilyKind::Hyperelliptic, 3) == 8);
  CHECK(default_cutoff(FamilyKind::Plane, 3) == 6);
  CHECK(default_cutoff(FamilyKind::Plane, 5) == 12);
}

TEST_CASE("bundled fixtures validate") {
  const auto all = bundled_fixtures();
  CHECK(all.size() == 8);
  for (const auto &fam : all) {
    CHECK_NOTHROW(fam.validate());
    CHECK(bundled_fixture(fam.name).name == fam.name);
  }
  CHECK(bundled_fixture("standard-plane-cubic").num_params == 10);
  CHECK(bundled_fixture("qm").declared_c == 3);
  CHECK_THROWS_AS(bundled_fixture("nope"), ConfigError);
}

TEST_CASE("specialization of the standard genus one family") {
  const auto fam = bundled_fixture("standard-hyperelliptic-1");
  const auto t = point({1, 1, 0, 1, 0});
  const auto s = specialize(fam, t, true);
  CHECK(s.binary().to_string() == "x^3*z + x*z^3 + z^4");
  CHECK(s.disc == -31);
  CHECK(s.codisc == discriminant(s.binary().derivative_x()));
  CHECK_FALSE(s.degenerate());
  CHECK_THROWS_AS(specialize(fam, point({1, 2}), false), std::invalid_argument);
}

TEST_CASE("degenerate points are tagged") {
  const auto iso = bundled_fixture("isotrivial-3");
  CHECK(specialize(iso, point({0}), false).degenerate());
  const auto qm = bundled_fixture("qm");
  CHECK(specialize(qm, point({2}), false).degenerate());
  CHECK(specialize(qm, point({-2}), false).degenerate());
  const auto std1 = bundled_fixture("standard-hyperelliptic-1");
  const auto zero = specialize(std1, point({0, 0, 0, 0, 0}), false);
  CHECK(zero.identically_zero);
  CHECK(zero.degenerate());
}

TEST_CASE("discriminants of the one-parameter fixtures") {
  const auto qm = bundled_fixture("qm");
  const auto twist = bundled_fixture("twist");
  for (long t = -20; t <= 20; ++t) {
    const auto tp = point({t});
    const Integer t2m4 = Integer(t * t - 4);
    CHECK(disc_at(qm, tp) == -46656 * ipow(t, 12) * t2m4 * t2m4);
    CHECK(disc_at(twist, tp) == -31 * ipow(t, 6));
    CHECK(disc_at(bundled_fixture("isotrivial-3"), tp) == -27 * ipow(t, 2));
    CHECK(disc_at(bundled_fixture("isotrivial-5"), tp) == 3125 * ipow(t, 4));
    CHECK(disc_at(bundled_fixture("isotrivial-7"), tp) == -823543 * ipow(t, 6));
  }
  CHECK(disc_at(qm, point({1})) == -419904);
  const auto f3 = factorize(abs(disc_at(qm, point({3}))));
  CHECK(f3.exponent_of(2) == 6);
  CHECK(f3.exponent_of(3) == 18);
  CHECK(f3.exponent_of(5) == 2);
  CHECK(abs(disc_at(bundled_fixture("isotrivial-5"), point({2}))) == 50000);
}

TEST_CASE("isotrivial exclusion divisor vanishes identically") {
  // F' = l x^(l-1) has a repeated root, so the weak count excludes everything.
  for (long t : {1L, 5L, -7L})
    CHECK(codisc_at(bundled_fixture("isotrivial-5"), point({t})) == 0);
}

TEST_CASE("plane specialization") {
  const auto fam = bundled_fixture("standard-plane-cubic");
  const auto monos = ternary_monomials(3);
  std::vector<Integer> t(10, 0);
  for (std::size_t i = 0; i < monos.size(); ++i)
    if (monos[i] == Monomial3{3, 0, 0} || monos[i] == Monomial3{0, 3, 0} ||
        monos[i] == Monomial3{0, 0, 3})
      t[i] = 1;
  const auto s = specialize(fam, t, true);
  CHECK(s.ternary() == TernaryForm::parse("x^3+y^3+z^3"));
  CHECK(s.disc == ipow(3, 12));
  CHECK(s.codisc.has_value());
  // (0:0:1) is a common zero of f_x, f_y and H_xy.
  CHECK(*s.codisc == 0);
}

TEST_CASE("nodal origin form") {
  for (unsigned d = 3; d <= 5; ++d) {
    const auto f = nodal_origin_form(d);
    CHECK(f.degree() == d);
    CHECK(plane_disc_proxy(f) == 0);
  }
  CHECK_THROWS_AS(nodal_origin_form(2), std::invalid_argument);
}

TEST_CASE("specialization commutes with reduction mod p") {
  std::mt19937_64 rng(101);
  const auto fam = bundled_fixture("standard-hyperelliptic-2");
  const auto qm = bundled_fixture("qm");
  for (int i = 0; i < 50; ++i) {
    const long p = (i % 2) ? 13 : 17;
    std::vector<Integer> t(fam.num_params), t_shift(fam.num_params);
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = static_cast<long>(rng() % 41) - 20;
      t_shift[k] = t[k] + p * (static_cast<long>(rng() % 5) - 2);
    }
    const Integer a = disc_at(fam, t), b = disc_at(fam, t_shift);
    CHECK(mpz_divisible_ui_p(Integer(a - b).get_mpz_t(), static_cast<unsigned long>(p)) != 0);
    const std::vector<Integer> u{t[0]}, u_shift{t_shift[0]};
    const Integer c = disc_at(qm, u), d = disc_at(qm, u_shift);
    CHECK(mpz_divisible_ui_p(Integer(c - d).get_mpz_t(), static_cast<unsigned long>(p)) != 0);
  }
}

TEST_CASE("family JSON") {
  const nlohmann::json j = {
      {"kind", "hyperelliptic"}, {"g", 2}, {"n", 1},
      {"coeffs", {"-t1^2 + 4", "2*t1^2 - 8", "0", "0", "0", "0", "1"}},
      {"c", 1}, {"A", 6}, {"mode", "weak"}, {"name", "toy"}};
  const auto fam = family_from_json(j);
  CHECK(fam.name == "toy");
  CHECK(fam.mode == CountingMode::WeakHyperelliptic);
  CHECK(fam.cutoff == 6);
  const auto again = family_from_json(family_to_json(fam));
  CHECK(family_to_json(again) == family_to_json(fam));

  for (const auto &fixture : bundled_fixtures())
    CHECK(family_to_json(family_from_json(family_to_json(fixture))) == family_to_json(fixture));

  auto bad = j;
  bad["colour"] = "red";
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad["coeffs"] = {"1", "2"};
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad["A"] = 3;
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad["mode"] = "weak-plane";
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad["coeffs"] = {"t2", "0", "0", "0", "0", "0", "1"};
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad["coeffs"] = {"1", "0", "0", "0", "0", "0", "0"};
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);
  bad = j;
  bad.erase("c");
  CHECK_THROWS_AS(family_from_json(bad), ConfigError);

  const auto dir = std::filesystem::temp_directory_path() / "semistable_family_test";
  std::filesystem::create_directories(dir);
  {
    std::ofstream out(dir / "toy.json");
    out << j.dump();
  }
  CHECK(family_to_json(load_family(dir / "toy.json")) == family_to_json(fam));
  {
    std::ofstream out(dir / "broken.json");
    out << "{ not json";
  }
  CHECK_THROWS_AS(load_family(dir / "broken.json"), ConfigError);
  CHECK_THROWS_AS(load_family(dir / "missing.json"), ConfigError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("hypothesis spot check") {
  const auto std1 = spot_check_hypotheses(bundled_fixture("standard-hyperelliptic-1"), 7);
  CHECK(std1.warnings.empty());
  CHECK_FALSE(std1.looks_squarefull);

  const auto iso = spot_check_hypotheses(bundled_fixture("isotrivial-3"), 7);
  CHECK(iso.codisc_identically_zero);
  CHECK_FALSE(iso.warnings.empty());

  const auto qm = spot_check_hypotheses(bundled_fixture("qm"), 7);
  CHECK(qm.fixed_divisor % 46656 == 0);
}
