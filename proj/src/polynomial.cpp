#include "semistable/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <stdexcept>

#include "semistable/errors.hpp"

namespace semistable {

IntPoly::IntPoly(std::vector<std::string> variables) : variables_(std::move(variables)) {}

IntPoly IntPoly::constant(std::vector<std::string> variables, const Integer &c) {
  IntPoly p(std::move(variables));
  p.add_term(Exponents(p.num_variables(), 0), c);
  return p;
}

IntPoly IntPoly::variable(std::vector<std::string> variables, std::string_view name) {
  IntPoly p(std::move(variables));
  Exponents e(p.num_variables(), 0);
  e[p.variable_index(name)] = 1;
  p.add_term(e, 1);
  return p;
}

std::size_t IntPoly::variable_index(std::string_view name) const {
  auto it = std::find(variables_.begin(), variables_.end(), name);
  if (it == variables_.end())
    throw std::invalid_argument("unknown variable '" + std::string(name) + "'");
  return static_cast<std::size_t>(it - variables_.begin());
}

bool IntPoly::is_constant() const { return degree() <= 0; }

int IntPoly::degree() const {
  int best = -1;
  for (const auto &[e, c] : terms_) {
    int total = 0;
    for (unsigned k : e)
      total += static_cast<int>(k);
    best = std::max(best, total);
  }
  return best;
}

int IntPoly::degree_in(std::size_t var) const {
  int best = -1;
  for (const auto &[e, c] : terms_)
    best = std::max(best, static_cast<int>(e[var]));
  return best;
}

Integer IntPoly::coefficient(const Exponents &e) const {
  auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

void IntPoly::add_term(const Exponents &e, const Integer &c) {
  if (e.size() != variables_.size())
    throw std::invalid_argument("IntPoly: exponent vector has wrong length");
  if (c == 0)
    return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0)
      terms_.erase(it);
  }
}

Integer IntPoly::evaluate(std::span<const Integer> point) const {
  if (point.size() != variables_.size())
    throw std::invalid_argument("IntPoly::evaluate: point has wrong length");
  Integer sum = 0;
  Integer term, power;
  for (const auto &[e, c] : terms_) {
    term = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      mpz_pow_ui(power.get_mpz_t(), point[i].get_mpz_t(), e[i]);
      term *= power;
    }
    sum += term;
  }
  return sum;
}

IntPoly IntPoly::derivative(std::size_t var) const {
  if (var >= variables_.size())
    throw std::invalid_argument("IntPoly::derivative: variable out of range");
  IntPoly out(variables_);
  for (const auto &[e, c] : terms_) {
    if (e[var] == 0)
      continue;
    Exponents lowered = e;
    --lowered[var];
    out.add_term(lowered, c * e[var]);
  }
  return out;
}

IntPoly IntPoly::pow(unsigned k) const {
  IntPoly result = constant(variables_, 1);
  IntPoly base = *this;
  while (k) {
    if (k & 1)
      result = result * base;
    k >>= 1;
    if (k)
      base = base * base;
  }
  return result;
}

std::vector<Integer> IntPoly::univariate_coefficients(std::size_t var) const {
  std::vector<Integer> out(static_cast<std::size_t>(std::max(degree_in(var), 0)) + 1, 0);
  for (const auto &[e, c] : terms_) {
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (i != var && e[i] != 0)
        throw std::invalid_argument("IntPoly: polynomial involves '" + variables_[i] +
                                    "', expected a univariate polynomial");
    }
    out[e[var]] = c;
  }
  return out;
}

std::vector<Integer> IntPoly::univariate_coefficients() const {
  if (variables_.size() != 1)
    throw std::invalid_argument("IntPoly: expected exactly one variable");
  return univariate_coefficients(0);
}

std::string IntPoly::to_string() const {
  if (terms_.empty())
    return "0";
  std::ostringstream os;
  bool first = true;
  // Highest total degree first.
  std::vector<std::pair<Exponents, Integer>> ordered(terms_.rbegin(), terms_.rend());
  std::stable_sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
    unsigned da = 0, db = 0;
    for (unsigned k : a.first) da += k;
    for (unsigned k : b.first) db += k;
    return da > db;
  });
  for (const auto &[e, c] : ordered) {
    const bool monomial_is_one =
        std::all_of(e.begin(), e.end(), [](unsigned k) { return k == 0; });
    Integer magnitude = abs(c);
    if (first)
      os << (c < 0 ? "-" : "");
    else
      os << (c < 0 ? " - " : " + ");
    first = false;
    bool need_star = false;
    if (magnitude != 1 || monomial_is_one) {
      os << magnitude.get_str();
      need_star = true;
    }
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0)
        continue;
      if (need_star)
        os << '*';
      os << variables_[i];
      if (e[i] > 1)
        os << '^' << e[i];
      need_star = true;
    }
  }
  return os.str();
}

void IntPoly::require_same_ring(const IntPoly &other) const {
  if (variables_ != other.variables_)
    throw std::invalid_argument("IntPoly: operands live in different rings");
}

IntPoly &IntPoly::operator+=(const IntPoly &other) {
  require_same_ring(other);
  for (const auto &[e, c] : other.terms_)
    add_term(e, c);
  return *this;
}

IntPoly &IntPoly::operator-=(const IntPoly &other) {
  require_same_ring(other);
  for (const auto &[e, c] : other.terms_)
    add_term(e, -c);
  return *this;
}

IntPoly operator*(const IntPoly &a, const IntPoly &b) {
  a.require_same_ring(b);
  IntPoly out(a.variables_);
  IntPoly::Exponents e(a.variables_.size());
  for (const auto &[ea, ca] : a.terms_) {
    for (const auto &[eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i)
        e[i] = ea[i] + eb[i];
      out.add_term(e, ca * cb);
    }
  }
  return out;
}

IntPoly operator*(IntPoly a, const Integer &c) {
  if (c == 0)
    return IntPoly(a.variables_);
  for (auto &[e, coeff] : a.terms_)
    coeff *= c;
  return a;
}

IntPoly IntPoly::operator-() const { return *this * Integer(-1); }

namespace {

class Parser {
public:
  Parser(std::string_view text, std::vector<std::string> variables)
      : text_(text), variables_(std::move(variables)) {}

  IntPoly parse() {
    IntPoly result = expression();
    skip_space();
    if (pos_ != text_.size())
      fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return result;
  }

private:
  [[noreturn]] void fail(const std::string &msg) const {
    throw ConfigError("polynomial parse error at offset " + std::to_string(pos_) +
                      " in \"" + std::string(text_) + "\": " + msg);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool starts_factor() {
    skip_space();
    if (pos_ >= text_.size())
      return false;
    const auto ch = static_cast<unsigned char>(text_[pos_]);
    return std::isdigit(ch) || std::isalpha(ch) || ch == '(';
  }

  IntPoly expression() {
    IntPoly acc = term();
    for (;;) {
      if (peek('+')) {
        ++pos_;
        acc += term();
      } else if (peek('-')) {
        ++pos_;
        acc -= term();
      } else {
        return acc;
      }
    }
  }

  IntPoly term() {
    IntPoly acc = unary();
    for (;;) {
      if (peek('*')) {
        ++pos_;
        acc = acc * unary();
      } else if (starts_factor()) {
        acc = acc * power();
      } else {
        return acc;
      }
    }
  }

  IntPoly unary() {
    if (peek('-')) {
      ++pos_;
      return -unary();
    }
    if (peek('+')) {
      ++pos_;
      return unary();
    }
    return power();
  }

  IntPoly power() {
    IntPoly base = primary();
    if (peek('^')) {
      ++pos_;
      skip_space();
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      if (start == pos_)
        fail("expected a nonnegative integer exponent");
      const std::string digits(text_.substr(start, pos_ - start));
      if (digits.size() > 4)
        fail("exponent too large");
      return base.pow(static_cast<unsigned>(std::stoul(digits)));
    }
    return base;
  }

  IntPoly primary() {
    skip_space();
    if (pos_ >= text_.size())
      fail("unexpected end of input");
    const auto ch = static_cast<unsigned char>(text_[pos_]);
    if (ch == '(') {
      ++pos_;
      IntPoly inner = expression();
      if (!peek(')'))
        fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (std::isdigit(ch)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      return IntPoly::constant(variables_, Integer(std::string(text_.substr(start, pos_ - start))));
    }
    if (std::isalpha(ch)) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
        ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (std::find(variables_.begin(), variables_.end(), name) == variables_.end()) {
        pos_ = start;
        fail("unknown variable '" + name + "'");
      }
      return IntPoly::variable(variables_, name);
    }
    fail("unexpected character '" + std::string(1, static_cast<char>(ch)) + "'");
  }

  std::string_view text_;
  std::vector<std::string> variables_;
  std::size_t pos_ = 0;
};

} // namespace

IntPoly parse_polynomial(std::string_view text, std::vector<std::string> variables) {
  return Parser(text, std::move(variables)).parse();
}

std::vector<std::string> parameter_names(std::size_t n) {
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 1; i <= n; ++i)
    names.push_back("t" + std::to_string(i));
  return names;
}

} // namespace semistable
