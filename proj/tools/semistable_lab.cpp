// semistable-lab: discriminants, per-prime reduction types and omega
// statistics for families of hyperelliptic and plane curves.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "semistable/errors.hpp"
#include "semistable/family.hpp"
#include "semistable/integer_arith.hpp"
#include "semistable/macaulay.hpp"
#include "semistable/omega_stats.hpp"
#include "semistable/reduction.hpp"
#include "semistable/report.hpp"

using namespace semistable;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitDegenerate = 3;

struct CurveInput {
  std::string hyperelliptic;
  std::string plane;
  std::string family_path;
  std::string fixture;
  std::string at;
};

void add_curve_options(CLI::App *cmd, CurveInput &in) {
  auto *h = cmd->add_option("--hyperelliptic", in.hyperelliptic,
                            "f(x) for the curve y^2 = f(x)");
  auto *p = cmd->add_option("--plane", in.plane, "homogeneous f(x, y, z)");
  auto *f = cmd->add_option("--family", in.family_path, "family config (JSON)");
  auto *x = cmd->add_option("--fixture", in.fixture, "bundled family name");
  cmd->add_option("--at", in.at, "parameter point, comma separated (t1,...,tn)");
  h->excludes(p)->excludes(f)->excludes(x);
  p->excludes(f)->excludes(x);
  f->excludes(x);
}

std::vector<Integer> parse_point(const std::string &text) {
  std::vector<Integer> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw ConfigError("empty entry in --at '" + text + "'");
    Integer v;
    if (v.set_str(item.substr(b, e - b + 1), 10) != 0)
      throw ConfigError("--at: '" + item + "' is not an integer");
    out.push_back(v);
  }
  if (out.empty())
    throw ConfigError("--at needs at least one value");
  return out;
}

std::string render_factorization(const Integer &n) {
  if (n == 0)
    return "0";
  const Factorization f = factorize(n);
  std::string out = f.sign < 0 ? "-1" : "";
  for (const auto &pp : f.factors) {
    out += out.empty() ? "" : " * ";
    out += pp.prime.get_str();
    if (pp.exponent > 1)
      out += "^" + std::to_string(pp.exponent);
  }
  if (!f.complete())
    out += (out.empty() ? "" : " * ") + std::string("[unfactored ") + f.residual.get_str() + "]";
  return out.empty() ? "1" : out;
}

// A curve to analyse, with the cutoff and genus that go with it.
struct Target {
  CurveFamily family;
  Specialization spec;
};

CurveFamily single_curve_family(FamilyKind kind, unsigned g_or_d) {
  CurveFamily fam;
  fam.name = "explicit";
  fam.kind = kind;
  fam.genus_or_degree = g_or_d;
  fam.cutoff = default_cutoff(kind, g_or_d);
  return fam;
}

Target resolve(const CurveInput &in, bool with_codisc) {
  Target out;
  if (!in.hyperelliptic.empty()) {
    const IntPoly f = parse_polynomial(in.hyperelliptic, {"x"});
    const int deg = f.degree();
    if (deg < 3)
      throw ConfigError("hyperelliptic curves need deg f >= 3");
    const unsigned formal = static_cast<unsigned>(deg + deg % 2);
    out.family = single_curve_family(FamilyKind::Hyperelliptic, formal / 2 - 1);
    out.spec.curve = homogenize_binary(f, formal);
    out.spec.disc = discriminant(out.spec.binary());
    if (with_codisc)
      out.spec.codisc = discriminant(out.spec.binary().derivative_x());
    return out;
  }
  if (!in.plane.empty()) {
    const TernaryForm f = TernaryForm::parse(in.plane);
    if (f.degree() < 3 || f.degree() > kMaxPlaneDegree)
      throw ConfigError("plane curves need 3 <= d <= " + std::to_string(kMaxPlaneDegree));
    out.family = single_curve_family(FamilyKind::Plane, f.degree());
    out.spec.curve = f;
    out.spec.disc = plane_disc_proxy(f);
    if (with_codisc)
      out.spec.codisc = transversality_resultant(f);
    return out;
  }
  if (in.family_path.empty() && in.fixture.empty())
    throw ConfigError("give one of --hyperelliptic, --plane, --family or --fixture");
  out.family = in.fixture.empty() ? load_family(in.family_path) : bundled_fixture(in.fixture);
  if (in.at.empty())
    throw ConfigError("--at is required with a family");
  const auto t = parse_point(in.at);
  if (t.size() != out.family.num_params)
    throw ConfigError("--at: family has " + std::to_string(out.family.num_params) +
                      " parameters, got " + std::to_string(t.size()));
  out.spec = specialize(out.family, t, with_codisc);
  return out;
}

int cmd_disc(const CurveInput &in, bool with_codisc, bool with_r) {
  const bool plane = !in.plane.empty();
  Target target = resolve(in, with_codisc || with_r);
  const bool is_plane = plane || target.family.kind == FamilyKind::Plane;
  if (target.spec.identically_zero)
    throw DegenerateInputError("the specialized curve is identically zero");
  std::cout << (is_plane ? "D = " : "disc = ") << target.spec.disc.get_str() << "\n";
  std::cout << "  factorization: " << render_factorization(target.spec.disc) << "\n";
  if (target.spec.codisc) {
    std::cout << (is_plane ? "R = " : "disc' = ") << target.spec.codisc->get_str() << "\n";
    std::cout << "  factorization: " << render_factorization(*target.spec.codisc) << "\n";
  }
  return 0;
}

std::string optional_cell(const std::optional<unsigned> &v) {
  return v ? std::to_string(*v) : "-";
}

int cmd_classify(const CurveInput &in) {
  const Target target = resolve(in, true);
  if (target.spec.degenerate())
    throw DegenerateInputError("degenerate specialization excluded by disc(t) != 0");
  const CountingMode mode = target.family.kind == FamilyKind::Hyperelliptic
                                ? CountingMode::WeakHyperelliptic
                                : CountingMode::WeakPlane;
  const OmegaRecord rec = omega_of(target.family, target.spec, mode, 16);
  std::cout << "disc = " << target.spec.disc.get_str() << "  (A = "
            << target.family.cutoff.get_str() << ")\n";
  std::printf("%-24s %4s %-24s %3s %3s %6s %s\n", "p", "v", "class", "m", "c", "toric",
              "tamagawa_one");
  for (const auto &v : rec.verdicts) {
    const std::string toric = v.toric_rank ? std::to_string(*v.toric_rank)
                              : v.cls == ReductionClass::BadSemistableNodal
                                  ? ">=" + std::to_string(v.toric_rank_floor)
                                  : "-";
    std::printf("%-24s %4u %-24s %3s %3s %6s %s\n", v.prime.get_str().c_str(), v.v_disc,
                std::string(to_string(v.cls)).c_str(), optional_cell(v.nodes).c_str(),
                optional_cell(v.components).c_str(), toric.c_str(),
                v.tamagawa_one ? "yes" : "no");
  }
  if (rec.verdicts.empty())
    std::cout << "(no bad primes)\n";
  return 0;
}

struct RunOptions {
  std::string family_path;
  std::string fixture;
  std::uint64_t box = 100;
  std::string mode;
  std::uint64_t sample = 100'000;
  std::uint64_t seed = 42;
  std::string probes;
  std::string out = "semistable-out";
  bool csv = false;
};

int cmd_run(const RunOptions &o) {
  if (o.family_path.empty() == o.fixture.empty())
    throw ConfigError("run needs exactly one of --family or --fixture");
  const CurveFamily family =
      o.fixture.empty() ? load_family(o.family_path) : bundled_fixture(o.fixture);
  RunConfig config;
  config.box = o.box;
  if (!o.mode.empty())
    config.mode = parse_counting_mode(o.mode, family.kind);
  config.sample_cap = o.sample;
  config.seed = o.seed;
  if (!o.probes.empty())
    for (const auto &p : parse_point(o.probes)) {
      if (p < 2 || p > 1'000'000)
        throw ConfigError("probe primes must lie in [2, 10^6]");
      config.probe_primes.push_back(static_cast<std::uint32_t>(p.get_ui()));
    }
  config.keep_records = o.csv;
  const RunResult result = run_experiment(family, config);
  write_outputs(result, o.out, o.csv);

  const DistributionReport &r = result.report;
  std::printf("family %s, mode %s, B = %llu, %s, %llu points (%llu degenerate, %llu undetermined)\n",
              r.family.c_str(), r.mode.c_str(), static_cast<unsigned long long>(r.box),
              r.exhaustive ? "exhaustive" : "sampled", static_cast<unsigned long long>(r.points),
              static_cast<unsigned long long>(r.degenerate),
              static_cast<unsigned long long>(r.undetermined));
  std::printf("KS distance          %.6f\n", r.ks_distance);
  std::printf("moments m1..m4       %.6f %.6f %.6f %.6f\n", r.moments[0], r.moments[1],
              r.moments[2], r.moments[3]);
  std::printf("threshold (>= %u)    %.6f\n", r.omega_threshold, r.threshold_proportion);
  std::printf("count >= 1           %.6f\n", r.positive_proportion);
  std::printf("residual fraction    %.6f\n", r.residual_fraction);
  for (const auto &d : r.densities)
    std::printf("p = %-6u rho %.6f  box %.6f  sampled %.6f\n", d.prime, d.rho, d.box_density,
                d.sampled_density.value_or(0.0));
  for (const auto &w : r.warnings)
    std::printf("warning: %s\n", w.c_str());
  std::printf("wrote %s\n", o.out.c_str());
  return 0;
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"Bad-reduction statistics for families of curves"};
  app.require_subcommand(1);

  CurveInput disc_in;
  bool with_codisc = false, with_r = false;
  auto *disc = app.add_subcommand("disc", "print the discriminant and its factorization");
  add_curve_options(disc, disc_in);
  disc->add_flag("--with-codisc", with_codisc, "also print disc(f') for hyperelliptic input");
  disc->add_flag("--with-R", with_r, "also print R(f) for plane input");

  CurveInput classify_in;
  auto *classify = app.add_subcommand("classify", "reduction type at every bad prime");
  add_curve_options(classify, classify_in);

  RunOptions run_opts;
  auto *run = app.add_subcommand("run", "omega statistics over a box of parameters");
  auto *rf = run->add_option("--family", run_opts.family_path, "family config (JSON)");
  auto *rx = run->add_option("--fixture", run_opts.fixture, "bundled family name");
  rf->excludes(rx);
  run->add_option("--B", run_opts.box, "box radius (>= 16)");
  run->add_option("--mode", run_opts.mode, "minimal or weak (default: the family's)");
  run->add_option("--sample", run_opts.sample, "sample size for boxes too large to enumerate");
  run->add_option("--seed", run_opts.seed, "seed for sampling and coordinate changes");
  run->add_option("--probe-primes", run_opts.probes, "comma separated primes for densities");
  run->add_option("--out", run_opts.out, "output directory");
  run->add_flag("--csv", run_opts.csv, "also write records.csv");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }

  try {
    if (*disc)
      return cmd_disc(disc_in, with_codisc, with_r);
    if (*classify)
      return cmd_classify(classify_in);
    return cmd_run(run_opts);
  } catch (const ConfigError &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const DegenerateInputError &e) {
    std::cerr << "degenerate: " << e.what() << "\n";
    return kExitDegenerate;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
