#include "semistable/ternary_form.hpp"

#include <sstream>
#include <stdexcept>

#include "semistable/errors.hpp"

namespace semistable {

std::vector<Monomial3> ternary_monomials(unsigned degree) {
  std::vector<Monomial3> out;
  out.reserve((degree + 1) * (degree + 2) / 2);
  for (unsigned i = degree + 1; i-- > 0;)
    for (unsigned j = degree - i + 1; j-- > 0;)
      out.push_back({i, j, degree - i - j});
  return out;
}

TernaryForm TernaryForm::from_poly(const IntPoly &f, unsigned degree) {
  static const char *const kNames[] = {"x", "y", "z"};
  std::array<int, 3> slot{-1, -1, -1};
  for (std::size_t v = 0; v < f.num_variables(); ++v) {
    bool known = false;
    for (int k = 0; k < 3; ++k) {
      if (f.variables()[v] == kNames[k]) {
        slot[static_cast<std::size_t>(k)] = static_cast<int>(v);
        known = true;
      }
    }
    if (!known && f.degree_in(v) > 0)
      throw std::invalid_argument("TernaryForm: unexpected variable '" + f.variables()[v] + "'");
  }
  TernaryForm out(degree);
  for (const auto &[e, c] : f.terms()) {
    Monomial3 m{0, 0, 0};
    for (std::size_t k = 0; k < 3; ++k)
      if (slot[k] >= 0)
        m[k] = e[static_cast<std::size_t>(slot[k])];
    if (m[0] + m[1] + m[2] != degree)
      throw std::invalid_argument("TernaryForm: polynomial is not homogeneous of degree " +
                                  std::to_string(degree));
    out.add_term(m, c);
  }
  return out;
}

TernaryForm TernaryForm::parse(std::string_view text) {
  const IntPoly f = parse_polynomial(text, {"x", "y", "z"});
  if (f.is_zero())
    throw ConfigError("ternary form literal is identically zero");
  const int d = f.degree();
  try {
    return from_poly(f, static_cast<unsigned>(d));
  } catch (const std::invalid_argument &e) {
    throw ConfigError(e.what());
  }
}

Integer TernaryForm::coefficient(const Monomial3 &m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Integer(0) : it->second;
}

void TernaryForm::add_term(const Monomial3 &m, const Integer &c) {
  if (m[0] + m[1] + m[2] != degree_)
    throw std::invalid_argument("TernaryForm: monomial degree mismatch");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

TernaryForm TernaryForm::partial(unsigned var) const {
  if (degree_ == 0)
    throw std::invalid_argument("TernaryForm::partial: degree 0 form");
  TernaryForm out(degree_ - 1);
  for (const auto &[m, c] : terms_) {
    if (m[var] == 0)
      continue;
    Monomial3 lowered = m;
    --lowered[var];
    out.add_term(lowered, c * m[var]);
  }
  return out;
}

Integer TernaryForm::evaluate(const Integer &x, const Integer &y, const Integer &z) const {
  Integer sum = 0, px, py, pz;
  for (const auto &[m, c] : terms_) {
    mpz_pow_ui(px.get_mpz_t(), x.get_mpz_t(), m[0]);
    mpz_pow_ui(py.get_mpz_t(), y.get_mpz_t(), m[1]);
    mpz_pow_ui(pz.get_mpz_t(), z.get_mpz_t(), m[2]);
    sum += c * px * py * pz;
  }
  return sum;
}

TernaryForm TernaryForm::compose(const Matrix3 &mat) const {
  std::array<TernaryForm, 3> linear{TernaryForm(1), TernaryForm(1), TernaryForm(1)};
  for (std::size_t r = 0; r < 3; ++r) {
    linear[r].add_term({1, 0, 0}, mat[r][0]);
    linear[r].add_term({0, 1, 0}, mat[r][1]);
    linear[r].add_term({0, 0, 1}, mat[r][2]);
  }
  // Powers of each substituted coordinate, built lazily.
  std::array<std::vector<TernaryForm>, 3> powers;
  for (std::size_t r = 0; r < 3; ++r) {
    TernaryForm one(0);
    one.add_term({0, 0, 0}, 1);
    powers[r].push_back(one);
    for (unsigned k = 1; k <= degree_; ++k)
      powers[r].push_back(powers[r].back() * linear[r]);
  }
  TernaryForm out(degree_);
  for (const auto &[m, c] : terms_) {
    TernaryForm term = powers[0][m[0]] * powers[1][m[1]] * powers[2][m[2]];
    for (const auto &[mm, cc] : term.terms())
      out.add_term(mm, c * cc);
  }
  return out;
}

TernaryForm TernaryForm::reduced_mod(const Integer &p) const {
  TernaryForm out(degree_);
  for (const auto &[m, c] : terms_) {
    Integer r;
    mpz_fdiv_r(r.get_mpz_t(), c.get_mpz_t(), p.get_mpz_t());
    out.add_term(m, r);
  }
  return out;
}

std::string TernaryForm::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  static const char kNames[] = {'x', 'y', 'z'};
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto &[m, c] = *it;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Integer mag = abs(c);
    bool star = false;
    if (mag != 1 || degree_ == 0) {
      os << mag.get_str();
      star = true;
    }
    for (std::size_t k = 0; k < 3; ++k) {
      if (m[k] == 0)
        continue;
      os << (star ? "*" : "") << kNames[k];
      if (m[k] > 1)
        os << '^' << m[k];
      star = true;
    }
  }
  return os.str();
}

TernaryForm operator*(const TernaryForm &a, const TernaryForm &b) {
  TernaryForm out(a.degree_ + b.degree_);
  for (const auto &[ma, ca] : a.terms_)
    for (const auto &[mb, cb] : b.terms_)
      out.add_term({ma[0] + mb[0], ma[1] + mb[1], ma[2] + mb[2]}, ca * cb);
  return out;
}

TernaryForm operator+(const TernaryForm &a, const TernaryForm &b) {
  if (a.degree_ != b.degree_)
    throw std::invalid_argument("TernaryForm: adding forms of different degrees");
  TernaryForm out = a;
  for (const auto &[m, c] : b.terms_)
    out.add_term(m, c);
  return out;
}

TernaryForm operator-(const TernaryForm &a, const TernaryForm &b) {
  if (a.degree_ != b.degree_)
    throw std::invalid_argument("TernaryForm: subtracting forms of different degrees");
  TernaryForm out = a;
  for (const auto &[m, c] : b.terms_)
    out.add_term(m, -c);
  return out;
}

} // namespace semistable
