#include "semistable/report.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <map>
#include <mutex>
#include <random>
#include <sstream>
#include <thread>

#include "semistable/errors.hpp"
#include "semistable/sampling.hpp"

namespace semistable {

void RunConfig::validate() const {
  if (box < 16)
    throw ConfigError("B must be at least 16");
  if (sample_cap < 1)
    throw ConfigError("sample cap must be at least 1");
  if (probe_primes.size() > 32)
    throw ConfigError("at most 32 probe primes are supported");
  for (std::uint32_t p : probe_primes)
    if (!is_prime(static_cast<std::uint64_t>(p)))
      throw ConfigError("probe " + std::to_string(p) + " is not prime");
}

unsigned worker_count(unsigned requested) {
  if (requested > 0)
    return requested;
  if (const char *env = std::getenv("SEMISTABLE_LAB_THREADS")) {
    char *end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && value > 0)
      return static_cast<unsigned>(value);
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

namespace {

enum class PointStatus : std::uint8_t { Ok, Degenerate, Undetermined };

struct Slot {
  PointStatus status = PointStatus::Ok;
  bool disc_known = false;
  bool residual = false;
  std::uint16_t omega = 0;
  std::uint16_t omega1 = 0;
  std::uint16_t headline = 0;
  /// Primes above A dividing the discriminant, before any exclusion.
  std::uint16_t bad_above_cutoff = 0;
  std::uint32_t probe_mask = 0;
  double normalized = 0;
  ClassCounts classes{};
};

class PointSource {
public:
  PointSource(unsigned n, std::uint64_t box, bool exhaustive, std::uint64_t count,
              std::uint64_t seed)
      : n_(n), box_(static_cast<std::int64_t>(box)), exhaustive_(exhaustive) {
    if (!exhaustive_) {
      // Drawn up front and in order, so the sample does not depend on how
      // the work is later split between threads.
      std::mt19937_64 rng(seed);
      coords_.resize(count * n_);
      for (auto &c : coords_)
        c = uniform_in(rng, -box_, box_);
    }
  }

  void point(std::uint64_t index, std::vector<std::int64_t> &out) const {
    out.resize(n_);
    if (!exhaustive_) {
      std::copy_n(coords_.begin() + static_cast<std::ptrdiff_t>(index * n_), n_, out.begin());
      return;
    }
    const std::uint64_t width = 2 * static_cast<std::uint64_t>(box_) + 1;
    for (unsigned i = 0; i < n_; ++i) {
      out[n_ - 1 - i] = static_cast<std::int64_t>(index % width) - box_;
      index /= width;
    }
  }

private:
  unsigned n_;
  std::int64_t box_;
  bool exhaustive_;
  std::vector<std::int64_t> coords_;
};

Slot evaluate_point(const CurveFamily &family, CountingMode mode, const RunConfig &config,
                    const MacaulayOptions &options, std::span<const std::int64_t> coords) {
  Slot slot;
  std::vector<Integer> t(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i)
    t[i] = static_cast<long>(coords[i]);

  Specialization s;
  try {
    s = specialize(family, t, false, options);
  } catch (const DegenerateInputError &) {
    slot.status = PointStatus::Undetermined;
    return slot;
  }
  slot.disc_known = true;
  for (std::size_t k = 0; k < config.probe_primes.size(); ++k)
    if (mpz_divisible_ui_p(s.disc.get_mpz_t(), config.probe_primes[k]))
      slot.probe_mask |= 1u << k;
  if (s.degenerate()) {
    slot.status = PointStatus::Degenerate;
    return slot;
  }
  if (mode != CountingMode::MinimallyBad) {
    try {
      s.codisc = family.kind == FamilyKind::Hyperelliptic
                     ? discriminant(s.binary().derivative_x())
                     : transversality_resultant(s.ternary(), options);
    } catch (const DegenerateInputError &) {
      slot.status = PointStatus::Undetermined;
      return slot;
    }
  }
  const OmegaRecord rec =
      omega_of(family, s, mode, static_cast<double>(config.box), config.budget);
  slot.omega = static_cast<std::uint16_t>(rec.omega);
  slot.omega1 = static_cast<std::uint16_t>(rec.omega1);
  slot.headline = static_cast<std::uint16_t>(rec.headline);
  slot.normalized = rec.normalized;
  slot.residual = rec.residual_present;
  slot.classes = rec.class_counts();
  for (const auto &v : rec.verdicts)
    if (v.cls != ReductionClass::ResidualUnknown && v.prime > family.cutoff)
      ++slot.bad_above_cutoff;
  return slot;
}

} // namespace

RunResult run_experiment(const CurveFamily &family, const RunConfig &config) {
  config.validate();
  family.validate();
  const CountingMode mode = config.mode.value_or(family.mode);
  if ((mode == CountingMode::WeakHyperelliptic && family.kind != FamilyKind::Hyperelliptic) ||
      (mode == CountingMode::WeakPlane && family.kind != FamilyKind::Plane))
    throw ConfigError("counting mode does not match the family kind");
  const unsigned n = family.num_params;
  for (std::uint32_t p : config.probe_primes) {
    const double residues = std::pow(static_cast<double>(p), n);
    if (residues > static_cast<double>(kResidueBudget))
      throw ConfigError("probe prime " + std::to_string(p) + ": p^n exceeds the residue budget");
  }

  const double width = 2.0 * static_cast<double>(config.box) + 1;
  const double volume = std::pow(width, n);
  const bool exhaustive = volume <= static_cast<double>(kExhaustiveBoxLimit);
  const std::uint64_t count =
      exhaustive ? static_cast<std::uint64_t>(std::llround(volume)) : config.sample_cap;
  const PointSource source(n, config.box, exhaustive, count, config.seed);
  const MacaulayOptions options{config.seed, MacaulayOptions{}.max_coordinate_changes};

  std::vector<Slot> slots(count);
  std::atomic<std::uint64_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    constexpr std::uint64_t kChunk = 64;
    std::vector<std::int64_t> coords;
    try {
      for (;;) {
        const std::uint64_t begin = next.fetch_add(kChunk);
        if (begin >= count)
          return;
        const std::uint64_t end = std::min(count, begin + kChunk);
        for (std::uint64_t i = begin; i < end; ++i) {
          source.point(i, coords);
          slots[i] = evaluate_point(family, mode, config, options, coords);
        }
      }
    } catch (...) {
      std::lock_guard lock(failure_mutex);
      if (!failure)
        failure = std::current_exception();
      next = count;
    }
  };
  const unsigned workers =
      static_cast<unsigned>(std::min<std::uint64_t>(worker_count(config.threads), count));
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w)
      pool.emplace_back(work);
    for (auto &th : pool)
      th.join();
  }
  if (failure)
    std::rethrow_exception(failure);

  RunResult result;
  DistributionReport &r = result.report;
  r.family = family.name;
  r.kind = std::string(to_string(family.kind));
  r.mode = std::string(to_string(mode));
  r.declared_c = family.declared_c;
  r.cutoff = family.cutoff.get_str();
  r.box = config.box;
  r.exhaustive = exhaustive;
  r.seed = config.seed;
  r.points = count;
  r.loglog_box = std::log(std::log(static_cast<double>(config.box)));

  std::vector<double> normalized;
  std::vector<unsigned> headline;
  std::map<unsigned, std::uint64_t> histogram;
  std::uint64_t residual = 0, bad_above = 0, counted = 0, known_disc = 0;
  double omega_sum = 0, omega1_sum = 0;
  std::vector<std::uint64_t> probe_hits(config.probe_primes.size(), 0);
  std::vector<std::int64_t> coords;
  for (std::uint64_t i = 0; i < count; ++i) {
    const Slot &s = slots[i];
    if (s.disc_known) {
      ++known_disc;
      for (std::size_t k = 0; k < probe_hits.size(); ++k)
        if (s.probe_mask & (1u << k))
          ++probe_hits[k];
    }
    if (s.status == PointStatus::Degenerate) {
      ++r.degenerate;
      continue;
    }
    if (s.status == PointStatus::Undetermined) {
      ++r.undetermined;
      continue;
    }
    normalized.push_back(s.normalized);
    headline.push_back(s.headline);
    ++histogram[s.headline];
    omega_sum += s.omega;
    omega1_sum += s.omega1;
    residual += s.residual ? 1 : 0;
    bad_above += s.bad_above_cutoff;
    counted += s.omega;
    for (std::size_t k = 0; k < r.class_totals.size(); ++k)
      r.class_totals[k] += s.classes[k];
    if (config.keep_records) {
      source.point(i, coords);
      result.records.push_back(
          {coords, s.omega, s.omega1, s.normalized, s.residual, s.classes});
    }
  }
  r.sample_size = normalized.size();
  if (r.sample_size == 0)
    throw DegenerateInputError("every point of the box is degenerate or undetermined");

  const double size = static_cast<double>(r.sample_size);
  r.mean_omega = omega_sum / size;
  r.mean_omega1 = omega1_sum / size;
  r.ks_distance = ks_distance(normalized);
  for (unsigned k = 1; k <= 4; ++k)
    r.moments[k - 1] = moment(normalized, k);
  r.omega_threshold = omega_threshold(static_cast<double>(config.box));
  r.threshold_proportion = semistable::threshold_proportion(headline, static_cast<double>(config.box));
  r.positive_proportion =
      static_cast<double>(std::count_if(headline.begin(), headline.end(),
                                        [](unsigned w) { return w >= 1; })) /
      size;
  r.residual_fraction = static_cast<double>(residual) / size;
  r.histogram.assign(histogram.begin(), histogram.end());
  r.all_bad_primes_excluded = mode != CountingMode::MinimallyBad && bad_above > 0 && counted == 0;

  for (std::size_t k = 0; k < config.probe_primes.size(); ++k) {
    ResidueDensity d = residue_density(family, config.probe_primes[k], config.box, options);
    if (known_disc > 0) {
      d.sampled_density = static_cast<double>(probe_hits[k]) / static_cast<double>(known_disc);
      d.sampled_deviation = std::abs(*d.sampled_density - d.rho);
    }
    r.densities.push_back(d);
  }

  CurveFamily checked = family;
  checked.mode = mode;
  r.warnings = spot_check_hypotheses(checked, config.seed).warnings;
  if (r.all_bad_primes_excluded)
    r.warnings.push_back("all bad primes divide the exclusion divisor");
  return result;
}

nlohmann::json to_json(const DistributionReport &r) {
  nlohmann::json j;
  j["family"] = r.family;
  j["kind"] = r.kind;
  j["mode"] = r.mode;
  j["c"] = r.declared_c;
  j["A"] = r.cutoff;
  j["B"] = r.box;
  j["exhaustive"] = r.exhaustive;
  j["seed"] = r.seed;
  j["points"] = r.points;
  j["sample_size"] = r.sample_size;
  j["degenerate"] = r.degenerate;
  j["undetermined"] = r.undetermined;
  j["loglog_B"] = r.loglog_box;
  j["mean_omega"] = r.mean_omega;
  j["mean_omega1"] = r.mean_omega1;
  j["ks_distance"] = r.ks_distance;
  j["moments"] = r.moments;
  j["omega_threshold"] = r.omega_threshold;
  j["threshold_proportion"] = r.threshold_proportion;
  j["positive_proportion"] = r.positive_proportion;
  j["residual_fraction"] = r.residual_fraction;
  nlohmann::json hist = nlohmann::json::array();
  for (const auto &[k, count] : r.histogram)
    hist.push_back({k, count});
  j["histogram"] = hist;
  nlohmann::json classes;
  for (std::size_t k = 0; k < kAllReductionClasses.size(); ++k)
    classes[std::string(to_string(kAllReductionClasses[k]))] = r.class_totals[k];
  j["class_totals"] = classes;
  j["all_bad_primes_excluded"] = r.all_bad_primes_excluded;
  nlohmann::json densities = nlohmann::json::array();
  for (const auto &d : r.densities) {
    nlohmann::json e;
    e["p"] = d.prime;
    e["roots"] = d.roots;
    e["residues"] = d.residues;
    e["rho"] = d.rho;
    e["box_density"] = d.box_density;
    e["box_deviation"] = d.box_deviation;
    e["sampled_density"] = d.sampled_density ? nlohmann::json(*d.sampled_density) : nullptr;
    e["sampled_deviation"] = d.sampled_deviation ? nlohmann::json(*d.sampled_deviation) : nullptr;
    densities.push_back(e);
  }
  j["densities"] = densities;
  j["warnings"] = r.warnings;
  return j;
}

DistributionReport report_from_json(const nlohmann::json &j) {
  try {
    DistributionReport r;
    r.family = j.at("family").get<std::string>();
    r.kind = j.at("kind").get<std::string>();
    r.mode = j.at("mode").get<std::string>();
    r.declared_c = j.at("c").get<unsigned>();
    r.cutoff = j.at("A").get<std::string>();
    r.box = j.at("B").get<std::uint64_t>();
    r.exhaustive = j.at("exhaustive").get<bool>();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.points = j.at("points").get<std::uint64_t>();
    r.sample_size = j.at("sample_size").get<std::uint64_t>();
    r.degenerate = j.at("degenerate").get<std::uint64_t>();
    r.undetermined = j.at("undetermined").get<std::uint64_t>();
    r.loglog_box = j.at("loglog_B").get<double>();
    r.mean_omega = j.at("mean_omega").get<double>();
    r.mean_omega1 = j.at("mean_omega1").get<double>();
    r.ks_distance = j.at("ks_distance").get<double>();
    r.moments = j.at("moments").get<std::array<double, 4>>();
    r.omega_threshold = j.at("omega_threshold").get<unsigned>();
    r.threshold_proportion = j.at("threshold_proportion").get<double>();
    r.positive_proportion = j.at("positive_proportion").get<double>();
    r.residual_fraction = j.at("residual_fraction").get<double>();
    for (const auto &e : j.at("histogram"))
      r.histogram.emplace_back(e.at(0).get<unsigned>(), e.at(1).get<std::uint64_t>());
    const auto &classes = j.at("class_totals");
    for (std::size_t k = 0; k < kAllReductionClasses.size(); ++k)
      r.class_totals[k] =
          classes.at(std::string(to_string(kAllReductionClasses[k]))).get<std::uint32_t>();
    r.all_bad_primes_excluded = j.at("all_bad_primes_excluded").get<bool>();
    for (const auto &e : j.at("densities")) {
      ResidueDensity d;
      d.prime = e.at("p").get<std::uint32_t>();
      d.roots = e.at("roots").get<std::uint64_t>();
      d.residues = e.at("residues").get<std::uint64_t>();
      d.rho = e.at("rho").get<double>();
      d.box_density = e.at("box_density").get<double>();
      d.box_deviation = e.at("box_deviation").get<double>();
      if (!e.at("sampled_density").is_null())
        d.sampled_density = e.at("sampled_density").get<double>();
      if (!e.at("sampled_deviation").is_null())
        d.sampled_deviation = e.at("sampled_deviation").get<double>();
      r.densities.push_back(d);
    }
    r.warnings = j.at("warnings").get<std::vector<std::string>>();
    return r;
  } catch (const nlohmann::json::exception &e) {
    throw ConfigError(std::string("malformed report: ") + e.what());
  }
}

std::string render_report(const DistributionReport &r) { return to_json(r).dump(2) + "\n"; }

std::string render_records_csv(const std::vector<RecordSummary> &records) {
  std::ostringstream os;
  os << "t,omega,omega1,normalized";
  for (ReductionClass c : kAllReductionClasses)
    os << ',' << to_string(c);
  os << '\n';
  char buf[32];
  for (const auto &rec : records) {
    for (std::size_t i = 0; i < rec.t.size(); ++i)
      os << (i ? " " : "") << rec.t[i];
    std::snprintf(buf, sizeof buf, "%.12g", rec.normalized);
    os << ',' << rec.omega << ',' << rec.omega1 << ',' << buf;
    for (auto count : rec.classes)
      os << ',' << count;
    os << '\n';
  }
  return os.str();
}

std::string render_histogram(const DistributionReport &r) {
  std::ostringstream os;
  os << "# normalized_count density\n";
  const double width = 1.0 / std::sqrt(r.declared_c * r.loglog_box);
  char buf[64];
  for (const auto &[k, count] : r.histogram) {
    const double centre = ek_normalize(k, r.declared_c, static_cast<double>(r.box));
    const double density =
        static_cast<double>(count) / static_cast<double>(r.sample_size) / width;
    std::snprintf(buf, sizeof buf, "%.10g %.10g\n", centre, density);
    os << buf;
  }
  return os.str();
}

void write_outputs(const RunResult &result, const std::filesystem::path &dir, bool with_csv) {
  namespace fs = std::filesystem;
  std::vector<std::pair<std::string, std::string>> files{
      {"report.json", render_report(result.report)},
      {"histogram.dat", render_histogram(result.report)}};
  if (with_csv)
    files.emplace_back("records.csv", render_records_csv(result.records));

  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw ConfigError("cannot create output directory '" + dir.string() + "': " + ec.message());
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    for (const auto &t : temps)
      fs::remove(t, ec);
  };
  for (const auto &[name, body] : files) {
    const fs::path tmp = dir / ("." + name + ".tmp");
    temps.push_back(tmp);
    std::ofstream out(tmp, std::ios::binary);
    out << body;
    out.close();
    if (!out) {
      cleanup();
      throw ConfigError("cannot write '" + tmp.string() + "'");
    }
  }
  for (std::size_t i = 0; i < files.size(); ++i) {
    fs::rename(temps[i], dir / files[i].first, ec);
    if (ec) {
      cleanup();
      throw ConfigError("cannot move '" + temps[i].string() + "' into place: " + ec.message());
    }
  }
}

} // namespace semistable
