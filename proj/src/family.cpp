#include "semistable/family.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <set>
#include <stdexcept>

#include "semistable/errors.hpp"
#include "semistable/sampling.hpp"

namespace semistable {

std::string_view to_string(FamilyKind k) {
  return k == FamilyKind::Hyperelliptic ? "hyperelliptic" : "plane";
}

std::string_view to_string(CountingMode m) {
  switch (m) {
  case CountingMode::MinimallyBad:
    return "minimally-bad";
  case CountingMode::WeakHyperelliptic:
    return "weak-hyperelliptic";
  case CountingMode::WeakPlane:
    return "weak-plane";
  }
  return "?";
}

CountingMode parse_counting_mode(std::string_view name, FamilyKind kind) {
  if (name == "minimal" || name == "minimally-bad")
    return CountingMode::MinimallyBad;
  if (name == "weak")
    return kind == FamilyKind::Hyperelliptic ? CountingMode::WeakHyperelliptic
                                             : CountingMode::WeakPlane;
  if (name == "weak-hyperelliptic" && kind == FamilyKind::Hyperelliptic)
    return CountingMode::WeakHyperelliptic;
  if (name == "weak-plane" && kind == FamilyKind::Plane)
    return CountingMode::WeakPlane;
  throw ConfigError("mode '" + std::string(name) + "' is not valid for a " +
                    std::string(to_string(kind)) + " family");
}

Integer default_cutoff(FamilyKind kind, unsigned genus_or_degree) {
  if (kind == FamilyKind::Hyperelliptic)
    return 2 * genus_or_degree + 2;
  return std::max(genus_or_degree, 3 * (genus_or_degree - 1));
}

unsigned CurveFamily::form_degree() const {
  return kind == FamilyKind::Hyperelliptic ? 2 * genus_or_degree + 2 : genus_or_degree;
}

unsigned CurveFamily::genus() const {
  if (kind == FamilyKind::Hyperelliptic)
    return genus_or_degree;
  return (genus_or_degree - 1) * (genus_or_degree - 2) / 2;
}

void CurveFamily::validate() const {
  if (kind == FamilyKind::Hyperelliptic && genus_or_degree < 1)
    throw ConfigError("hyperelliptic family needs g >= 1");
  if (kind == FamilyKind::Plane && (genus_or_degree < 3 || genus_or_degree > kMaxPlaneDegree))
    throw ConfigError("plane family needs 3 <= d <= " + std::to_string(kMaxPlaneDegree));
  if (num_params < 1)
    throw ConfigError("family needs n >= 1 parameters");
  if (declared_c < 1)
    throw ConfigError("declared c must be >= 1");
  const std::size_t expected = kind == FamilyKind::Hyperelliptic
                                   ? form_degree() + 1
                                   : ternary_monomials(genus_or_degree).size();
  if (coefficients.size() != expected)
    throw ConfigError("expected " + std::to_string(expected) + " coefficient polynomials, got " +
                      std::to_string(coefficients.size()));
  const auto names = parameter_names(num_params);
  for (const auto &c : coefficients)
    if (c.variables() != names)
      throw ConfigError("coefficient polynomials must be in t1..t" + std::to_string(num_params));
  if (cutoff < default_cutoff(kind, genus_or_degree))
    throw ConfigError("cutoff A = " + cutoff.get_str() + " is below the minimum " +
                      default_cutoff(kind, genus_or_degree).get_str());
  if (kind == FamilyKind::Hyperelliptic) {
    // The top block a_{2g+1}, a_{2g+2} must not both vanish identically.
    const std::size_t d = form_degree();
    if (coefficients[d].is_zero() && coefficients[d - 1].is_zero())
      throw ConfigError("leading coefficients a_{2g+1}, a_{2g+2} are both zero");
  } else if (std::all_of(coefficients.begin(), coefficients.end(),
                         [](const IntPoly &c) { return c.is_zero(); })) {
    throw ConfigError("all coefficient polynomials are zero");
  }
  if (mode == CountingMode::WeakHyperelliptic && kind != FamilyKind::Hyperelliptic)
    throw ConfigError("weak-hyperelliptic mode needs a hyperelliptic family");
  if (mode == CountingMode::WeakPlane && kind != FamilyKind::Plane)
    throw ConfigError("weak-plane mode needs a plane family");
}

std::variant<BinaryForm, TernaryForm> specialize_curve(const CurveFamily &family,
                                                       std::span<const Integer> t) {
  if (t.size() != family.num_params)
    throw std::invalid_argument("specialize: expected " + std::to_string(family.num_params) +
                                " parameters, got " + std::to_string(t.size()));
  if (family.kind == FamilyKind::Hyperelliptic) {
    Coefficients values;
    values.reserve(family.coefficients.size());
    for (const auto &c : family.coefficients)
      values.push_back(c.evaluate(t));
    return BinaryForm(family.form_degree(), std::move(values));
  }
  const auto monomials = ternary_monomials(family.genus_or_degree);
  TernaryForm f(family.genus_or_degree);
  for (std::size_t i = 0; i < monomials.size(); ++i)
    f.add_term(monomials[i], family.coefficients[i].evaluate(t));
  return f;
}

Specialization specialize(const CurveFamily &family, std::span<const Integer> t,
                          bool with_codisc, const MacaulayOptions &options) {
  Specialization s;
  s.point.assign(t.begin(), t.end());
  s.curve = specialize_curve(family, t);
  if (family.kind == FamilyKind::Hyperelliptic) {
    const BinaryForm &f = s.binary();
    s.identically_zero = f.is_zero();
    s.disc = s.identically_zero ? Integer(0) : discriminant(f);
    if (with_codisc)
      s.codisc = s.identically_zero ? Integer(0) : discriminant(f.derivative_x());
  } else {
    const TernaryForm &f = s.ternary();
    s.identically_zero = f.is_zero();
    s.disc = s.identically_zero ? Integer(0) : plane_disc_proxy(f, options);
    if (with_codisc)
      s.codisc = s.identically_zero ? Integer(0) : transversality_resultant(f, options);
  }
  return s;
}

Integer disc_at(const CurveFamily &family, std::span<const Integer> t,
                const MacaulayOptions &options) {
  return specialize(family, t, false, options).disc;
}

Integer codisc_at(const CurveFamily &family, std::span<const Integer> t,
                  const MacaulayOptions &options) {
  return *specialize(family, t, true, options).codisc;
}

namespace {

// Splits a polynomial in {x, t1..tn} into its coefficients of x^0..x^degree.
std::vector<IntPoly> coefficients_in_x(const IntPoly &f, unsigned degree, unsigned n) {
  const auto names = parameter_names(n);
  std::vector<IntPoly> out(degree + 1, IntPoly(names));
  for (const auto &[e, c] : f.terms()) {
    if (e[0] > degree)
      throw std::logic_error("coefficients_in_x: degree exceeds the formal degree");
    out[e[0]].add_term(IntPoly::Exponents(e.begin() + 1, e.end()), c);
  }
  return out;
}

std::vector<std::string> x_and_parameters(unsigned n) {
  std::vector<std::string> names{"x"};
  for (auto &name : parameter_names(n))
    names.push_back(std::move(name));
  return names;
}

CurveFamily hyperelliptic_from_text(std::string name, unsigned genus, unsigned n,
                                    std::string_view f_of_x, unsigned declared_c,
                                    CountingMode mode) {
  CurveFamily fam;
  fam.name = std::move(name);
  fam.kind = FamilyKind::Hyperelliptic;
  fam.genus_or_degree = genus;
  fam.num_params = n;
  fam.coefficients =
      coefficients_in_x(parse_polynomial(f_of_x, x_and_parameters(n)), 2 * genus + 2, n);
  fam.declared_c = declared_c;
  fam.cutoff = default_cutoff(FamilyKind::Hyperelliptic, genus);
  fam.mode = mode;
  fam.validate();
  return fam;
}

} // namespace

CurveFamily standard_hyperelliptic_family(unsigned genus) {
  if (genus < 1)
    throw ConfigError("standard hyperelliptic family needs g >= 1");
  CurveFamily fam;
  fam.name = "standard-hyperelliptic-" + std::to_string(genus);
  fam.kind = FamilyKind::Hyperelliptic;
  fam.genus_or_degree = genus;
  fam.num_params = 2 * genus + 3;
  const auto names = parameter_names(fam.num_params);
  for (const auto &t : names)
    fam.coefficients.push_back(IntPoly::variable(names, t));
  fam.declared_c = 1;
  fam.cutoff = default_cutoff(FamilyKind::Hyperelliptic, genus);
  fam.mode = CountingMode::MinimallyBad;
  fam.validate();
  return fam;
}

CurveFamily isotrivial_family(unsigned ell) {
  if (ell < 3 || ell % 2 == 0)
    throw ConfigError("isotrivial family needs an odd exponent >= 3");
  const std::string f = "x^" + std::to_string(ell) + " + t1";
  return hyperelliptic_from_text("isotrivial-" + std::to_string(ell), (ell - 1) / 2, 1, f, 1,
                                 CountingMode::WeakHyperelliptic);
}

CurveFamily standard_plane_family(unsigned degree) {
  CurveFamily fam;
  fam.name = degree == 3 ? "standard-plane-cubic" : "standard-plane-" + std::to_string(degree);
  fam.kind = FamilyKind::Plane;
  fam.genus_or_degree = degree;
  fam.num_params = static_cast<unsigned>(ternary_monomials(degree).size());
  const auto names = parameter_names(fam.num_params);
  for (const auto &t : names)
    fam.coefficients.push_back(IntPoly::variable(names, t));
  fam.declared_c = 1;
  fam.cutoff = default_cutoff(FamilyKind::Plane, degree);
  fam.mode = CountingMode::MinimallyBad;
  fam.validate();
  return fam;
}

std::vector<CurveFamily> bundled_fixtures() {
  std::vector<CurveFamily> out;
  out.push_back(standard_hyperelliptic_family(1));
  out.push_back(standard_hyperelliptic_family(2));
  for (unsigned ell : {3u, 5u, 7u})
    out.push_back(isotrivial_family(ell));
  out.push_back(hyperelliptic_from_text("twist", 1, 1, "t1*x^3 + t1*x + t1", 1,
                                        CountingMode::WeakHyperelliptic));
  // Jacobians with quaternionic multiplication; disc = -2^6 3^6 (t^2-4)^2 t^12.
  out.push_back(hyperelliptic_from_text(
      "qm", 2, 1, "(x^2 + 2*x - 2)*(x^4 + 4*x^3 + (2*t1^2 - 8)*x - t1^2 + 4)", 3,
      CountingMode::WeakHyperelliptic));
  out.push_back(standard_plane_family(3));
  return out;
}

CurveFamily bundled_fixture(std::string_view name) {
  for (auto &fam : bundled_fixtures())
    if (fam.name == name)
      return fam;
  std::string known;
  for (const auto &fam : bundled_fixtures())
    known += (known.empty() ? "" : ", ") + fam.name;
  throw ConfigError("unknown fixture '" + std::string(name) + "' (known: " + known + ")");
}

TernaryForm nodal_origin_form(unsigned degree) {
  if (degree < 3)
    throw std::invalid_argument("nodal_origin_form: degree must be at least 3");
  TernaryForm f(degree);
  f.add_term({degree, 0, 0}, 1);
  f.add_term({0, degree, 0}, 1);
  f.add_term({1, 1, degree - 2}, -1);
  return f;
}

namespace {

const std::set<std::string> kFamilyKeys{"kind", "g", "d", "n", "coeffs", "c", "A", "mode", "name"};

template <typename T> T required(const nlohmann::json &j, const char *key) {
  if (!j.contains(key))
    throw ConfigError(std::string("family config: missing key '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception &) {
    throw ConfigError(std::string("family config: key '") + key + "' has the wrong type");
  }
}

} // namespace

CurveFamily family_from_json(const nlohmann::json &j) {
  if (!j.is_object())
    throw ConfigError("family config: top level must be an object");
  for (const auto &[key, value] : j.items())
    if (!kFamilyKeys.contains(key))
      throw ConfigError("family config: unknown key '" + key + "'");

  CurveFamily fam;
  const auto kind = required<std::string>(j, "kind");
  if (kind == "hyperelliptic") {
    fam.kind = FamilyKind::Hyperelliptic;
    if (j.contains("d"))
      throw ConfigError("family config: hyperelliptic families take 'g', not 'd'");
    const auto g = required<int>(j, "g");
    if (g < 1)
      throw ConfigError("family config: g must be >= 1");
    fam.genus_or_degree = static_cast<unsigned>(g);
  } else if (kind == "plane") {
    fam.kind = FamilyKind::Plane;
    if (j.contains("g"))
      throw ConfigError("family config: plane families take 'd', not 'g'");
    const auto d = required<int>(j, "d");
    if (d < 3)
      throw ConfigError("family config: d must be >= 3");
    fam.genus_or_degree = static_cast<unsigned>(d);
  } else {
    throw ConfigError("family config: kind must be 'hyperelliptic' or 'plane'");
  }
  const auto n = required<int>(j, "n");
  if (n < 1)
    throw ConfigError("family config: n must be >= 1");
  fam.num_params = static_cast<unsigned>(n);
  const auto c = required<int>(j, "c");
  if (c < 1)
    throw ConfigError("family config: c must be >= 1");
  fam.declared_c = static_cast<unsigned>(c);

  const auto names = parameter_names(fam.num_params);
  for (const auto &text : required<std::vector<std::string>>(j, "coeffs"))
    fam.coefficients.push_back(parse_polynomial(text, names));

  fam.cutoff = default_cutoff(fam.kind, fam.genus_or_degree);
  if (j.contains("A")) {
    const auto &a = j.at("A");
    if (a.is_number_integer())
      fam.cutoff = Integer(a.get<long>());
    else if (a.is_string())
      fam.cutoff = Integer(a.get<std::string>());
    else
      throw ConfigError("family config: key 'A' has the wrong type");
  }
  fam.mode = j.contains("mode") ? parse_counting_mode(required<std::string>(j, "mode"), fam.kind)
                                : CountingMode::MinimallyBad;
  fam.name = j.contains("name") ? required<std::string>(j, "name") : std::string("custom");
  fam.validate();
  return fam;
}

nlohmann::json family_to_json(const CurveFamily &family) {
  nlohmann::json j;
  j["name"] = family.name;
  j["kind"] = std::string(to_string(family.kind));
  j[family.kind == FamilyKind::Hyperelliptic ? "g" : "d"] = family.genus_or_degree;
  j["n"] = family.num_params;
  std::vector<std::string> coeffs;
  for (const auto &c : family.coefficients)
    coeffs.push_back(c.to_string());
  j["coeffs"] = coeffs;
  j["c"] = family.declared_c;
  j["A"] = family.cutoff.get_str();
  j["mode"] = std::string(to_string(family.mode));
  return j;
}

CurveFamily load_family(const std::filesystem::path &path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("cannot open family file '" + path.string() + "'");
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error &e) {
    throw ConfigError("family file '" + path.string() + "': " + e.what());
  }
  return family_from_json(j);
}

HypothesisReport spot_check_hypotheses(const CurveFamily &family, std::uint64_t seed,
                                       std::size_t samples, unsigned radius) {
  HypothesisReport report;
  std::mt19937_64 rng(seed);
  std::set<Integer, std::less<>> distinct;
  bool all_codisc_zero = true;
  bool saw_simple_prime = false;
  const bool weak = family.mode != CountingMode::MinimallyBad;
  const MacaulayOptions options{seed, MacaulayOptions{}.max_coordinate_changes};

  for (std::size_t k = 0; k < samples; ++k) {
    std::vector<Integer> t(family.num_params);
    for (auto &ti : t)
      ti = static_cast<long>(uniform_in(rng, -static_cast<long>(radius), radius));
    Specialization s;
    try {
      s = specialize(family, t, weak, options);
    } catch (const DegenerateInputError &) {
      ++report.degenerate;
      continue;
    }
    ++report.samples;
    if (s.degenerate()) {
      ++report.degenerate;
      continue;
    }
    distinct.insert(s.disc);
    report.fixed_divisor = gcd(report.fixed_divisor, s.disc);
    if (s.codisc) {
      if (*s.codisc != 0)
        all_codisc_zero = false;
      report.common_codisc_divisor = gcd(report.common_codisc_divisor, gcd(s.disc, *s.codisc));
    }
    const Factorization fac = factorize(s.disc);
    for (const auto &pp : fac.factors)
      if (pp.prime > family.cutoff && pp.exponent == 1)
        saw_simple_prime = true;
  }

  const std::size_t usable = distinct.empty() ? 0 : report.samples - report.degenerate;
  report.disc_constant = distinct.size() <= 1;
  report.codisc_identically_zero = weak && all_codisc_zero;
  report.looks_squarefull = usable > 0 && !saw_simple_prime;

  if (usable == 0)
    report.warnings.push_back("every sampled specialization is degenerate");
  if (usable > 0 && report.disc_constant)
    report.warnings.push_back("discriminant looks constant on the sample");
  if (report.codisc_identically_zero)
    report.warnings.push_back("exclusion divisor vanished at every sampled point");
  if (weak && usable > 0 && !report.codisc_identically_zero) {
    const Factorization common = factorize(report.common_codisc_divisor == 0
                                               ? Integer(1)
                                               : report.common_codisc_divisor);
    for (const auto &pp : common.factors)
      if (pp.prime > family.cutoff)
        report.warnings.push_back("discriminant and exclusion divisor share the prime " +
                                  pp.prime.get_str() + " at every sampled point");
  }
  if (family.mode == CountingMode::MinimallyBad && report.looks_squarefull)
    report.warnings.push_back("no sampled discriminant has a simple prime factor above A; "
                              "the discriminant may be squarefull");
  return report;
}

} // namespace semistable
