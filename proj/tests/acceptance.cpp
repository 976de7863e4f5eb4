// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "semistable/family.hpp"
#include "semistable/macaulay.hpp"
#include "semistable/reduction.hpp"
#include "semistable/report.hpp"

using namespace semistable;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

int failures = 0;

void criterion(int number, const std::string &title, double limit_seconds,
               const std::function<Outcome()> &body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception &e) {
    out = {false, std::string("exception: ") + e.what()};
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds > limit_seconds) {
    out.pass = false;
    out.detail += " [over the " + std::to_string(static_cast<int>(limit_seconds)) + " s budget]";
  }
  failures += out.pass ? 0 : 1;
  std::printf("C%-2d %s  %s: %s (%.2f s)\n", number, out.pass ? "PASS" : "FAIL", title.c_str(),
              out.detail.c_str(), seconds);
  std::fflush(stdout);
}

std::string fmt(const char *format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, a, b, c);
  return buf;
}

std::string slurp(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Integer ipow(const Integer &base, unsigned e) {
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), e);
  return out;
}

Outcome qm_discriminant() {
  const auto fam = bundled_fixture("qm");
  int checked = 0;
  for (long t = -20; t <= 20; ++t) {
    if (t == 0 || t == 2 || t == -2)
      continue;
    const std::vector<Integer> point{t};
    const Integer expected = 64 * 729 * ipow(Integer(t * t - 4), 2) * ipow(Integer(t), 12);
    if (abs(disc_at(fam, point)) != expected)
      return {false, "mismatch at t = " + std::to_string(t)};
    ++checked;
  }
  return {true, std::to_string(checked) + " values of t match 2^6 3^6 (t^2-4)^2 t^12"};
}

Outcome isotrivial_discriminant() {
  int checked = 0;
  for (unsigned ell : {3u, 5u, 7u}) {
    const auto fam = isotrivial_family(ell);
    for (long t = -10; t <= 10; ++t) {
      if (t == 0)
        continue;
      const std::vector<Integer> point{t};
      const Integer expected = ipow(Integer(ell), ell) * ipow(Integer(std::abs(t)), ell - 1);
      if (abs(disc_at(fam, point)) != expected)
        return {false, "mismatch at l = " + std::to_string(ell) + ", t = " + std::to_string(t)};
      ++checked;
    }
  }
  return {true, std::to_string(checked) + " values match l^l |t|^(l-1)"};
}

Outcome nodal_cubic() {
  const auto f = nodal_origin_form(3);
  const Integer d = plane_disc_proxy(f);
  const Integer r = transversality_resultant(f);
  return {d == 0 && r != 0, "D = " + d.get_str() + ", R = " + r.get_str()};
}

Outcome hyperelliptic_oracle() {
  std::mt19937_64 rng(4242);
  std::size_t primes = 0, mismatches = 0, bad_nodes = 0;
  for (int i = 0; i < 500; ++i) {
    Coefficients c(7);
    for (auto &a : c)
      a = static_cast<long>(rng() % 101) - 50;
    const BinaryForm form(6, c);
    if (c == Coefficients(7, 0))
      continue;
    const Integer disc = discriminant(form);
    if (disc == 0)
      continue;
    for (const auto &pp : factorize(disc).factors) {
      if (pp.prime < 11 || pp.prime > 47)
        continue;
      if (FpPoly(pp.prime, c).is_zero())
        continue;
      const auto p = static_cast<std::uint32_t>(pp.prime.get_ui());
      const auto prof = multiplicity_profile(form, pp.prime);
      const auto scan = oracle::singular_points_of_double_cover(form, p);
      ++primes;
      if (prof.double_root_orbits() != scan.orbits || prof.double_root_count() != scan.closure)
        ++mismatches;
      bad_nodes += prof.double_root_count();
    }
  }
  return {mismatches == 0 && primes > 0,
          std::to_string(primes) + " (form, p) pairs, " + std::to_string(bad_nodes) +
              " nodes, " + std::to_string(mismatches) + " mismatches"};
}

Outcome minimally_bad_cubics() {
  std::mt19937_64 rng(4343);
  const Integer cutoff = default_cutoff(FamilyKind::Plane, 3);
  int found = 0, violations = 0;
  while (found < 100) {
    TernaryForm f(3);
    for (const auto &m : ternary_monomials(3))
      f.add_term(m, static_cast<long>(rng() % 21) - 10);
    if (f.is_zero())
      continue;
    const Integer d = plane_disc_proxy(f);
    if (d == 0)
      continue;
    for (const auto &pp : factorize(d).factors) {
      if (pp.exponent != 1 || pp.prime <= cutoff || pp.prime > 101)
        continue;
      const auto p = static_cast<std::uint32_t>(pp.prime.get_ui());
      const auto points = singular_points_fp(f, p, 1);
      const bool one_node = points.size() == 1 && points[0].node &&
                            singular_scheme_length(f, p) == 1u;
      const auto v = classify_plane_prime(f, pp.prime, cutoff, 1, true);
      if (!one_node || v.cls != ReductionClass::MinimallyBad || v.toric_rank != 1 ||
          !v.tamagawa_one)
        ++violations;
      ++found;
      break;
    }
  }
  return {violations == 0,
          std::to_string(found) + " cubics, " + std::to_string(violations) + " violations"};
}

Outcome equidistribution() {
  const auto fam = bundled_fixture("standard-hyperelliptic-1");
  const std::uint64_t box = 500;
  bool ok = true;
  std::string detail;
  for (std::uint32_t p : {5u, 7u, 11u, 13u}) {
    const auto d = residue_density(fam, p, box);
    const double tolerance = 3.0 * fam.num_params * p / static_cast<double>(box);
    ok = ok && d.box_deviation <= tolerance;
    detail += fmt("p=%.0f rho %.5f dev %.2e; ", p, d.rho, d.box_deviation);
  }
  return {ok, detail};
}

struct TrendRuns {
  std::array<DistributionReport, 3> reports;
  bool done = false;
};

constexpr std::array<std::uint64_t, 3> kBoxes{100, 1000, 10000};

RunConfig trend_config(std::uint64_t box) {
  RunConfig config;
  config.box = box;
  config.sample_cap = 100000;
  config.seed = 42;
  config.mode = CountingMode::MinimallyBad;
  return config;
}

Outcome erdos_kac_trend(TrendRuns &runs) {
  const auto fam = bundled_fixture("standard-hyperelliptic-1");
  for (std::size_t i = 0; i < kBoxes.size(); ++i)
    runs.reports[i] = run_experiment(fam, trend_config(kBoxes[i])).report;
  runs.done = true;
  bool ok = runs.reports[0].ks_distance <= 0.35;
  std::string detail;
  for (std::size_t i = 0; i < kBoxes.size(); ++i) {
    const auto &r = runs.reports[i];
    if (i > 0)
      ok = ok && r.ks_distance <= runs.reports[i - 1].ks_distance + 0.05;
    ok = ok && r.moments[1] >= 0.3 && r.moments[1] <= 3;
    detail += fmt("B=%.0f KS %.4f m2 %.3f; ", static_cast<double>(kBoxes[i]), r.ks_distance,
                  r.moments[1]);
  }
  detail += "(needs KS <= 0.35 at B=100)";
  return {ok, detail};
}

Outcome threshold(const TrendRuns &runs) {
  if (!runs.done)
    return {false, "trend runs unavailable"};
  const auto &r = runs.reports[2];
  return {r.positive_proportion >= 0.95,
          fmt("omega>=1 share %.4f, literal threshold %.0f share %.4f", r.positive_proportion,
              r.omega_threshold, r.threshold_proportion)};
}

Outcome moments(const TrendRuns &runs) {
  if (!runs.done)
    return {false, "trend runs unavailable"};
  bool ok = true;
  std::string detail;
  for (const auto &r : runs.reports) {
    ok = ok && r.moments[1] < 16 && r.moments[2] < 64 && r.moments[3] < 256;
    detail += fmt("m2 %.2f m3 %.2f m4 %.2f; ", r.moments[1], r.moments[2], r.moments[3]);
  }
  return {ok, detail};
}

Outcome determinism() {
  const auto fam = bundled_fixture("standard-hyperelliptic-1");
  const auto base = std::filesystem::temp_directory_path() / "semistable_acceptance";
  std::filesystem::remove_all(base);
  write_outputs(run_experiment(fam, trend_config(1000)), base / "first", false);
  write_outputs(run_experiment(fam, trend_config(1000)), base / "second", false);
  const std::string a = slurp(base / "first" / "report.json");
  const std::string b = slurp(base / "second" / "report.json");
  std::filesystem::remove_all(base);
  return {!a.empty() && a == b, std::to_string(a.size()) + " bytes, " +
                                    (a == b ? "identical" : "different")};
}

} // namespace

int main() {
  TrendRuns runs;
  criterion(1, "qm discriminant", 1, qm_discriminant);
  criterion(2, "isotrivial discriminants", 1, isotrivial_discriminant);
  criterion(3, "nodal cubic", 1, nodal_cubic);
  criterion(4, "double-cover node counts vs exhaustive scan", 120, hyperelliptic_oracle);
  criterion(5, "minimally bad plane cubics", 120, minimally_bad_cubics);
  criterion(6, "residue densities at B = 500", 300, equidistribution);
  criterion(7, "normalized omega trend", 600, [&] { return erdos_kac_trend(runs); });
  criterion(8, "share of records with a bad prime", 1, [&] { return threshold(runs); });
  criterion(9, "bounded moments", 1, [&] { return moments(runs); });
  criterion(10, "deterministic report", 120, determinism);
  std::printf("%d criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
