#include "semistable/finite_field.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace semistable {

namespace {

Integer mod(const Integer &a, const Integer &p) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t());
  return r;
}

Integer inverse_mod(const Integer &a, const Integer &p) {
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), p.get_mpz_t()) == 0)
    throw std::domain_error("FpPoly: leading coefficient is not invertible");
  return inv;
}

} // namespace

FpPoly::FpPoly(Integer p, std::vector<Integer> coefficients)
    : p_(std::move(p)), c_(std::move(coefficients)) {
  if (p_ < 2)
    throw std::invalid_argument("FpPoly: modulus must be a prime");
  for (auto &c : c_)
    c = mod(c, p_);
  normalize();
}

FpPoly FpPoly::monomial(const Integer &p, unsigned k, const Integer &c) {
  std::vector<Integer> coeffs(k + 1, 0);
  coeffs[k] = c;
  return FpPoly(p, std::move(coeffs));
}

void FpPoly::normalize() {
  while (!c_.empty() && c_.back() == 0)
    c_.pop_back();
}

FpPoly FpPoly::monic() const {
  if (is_zero())
    return *this;
  const Integer inv = inverse_mod(c_.back(), p_);
  std::vector<Integer> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i)
    out[i] = c_[i] * inv;
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1)
    return FpPoly(p_, {});
  std::vector<Integer> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i)
    out[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return FpPoly(p_, std::move(out));
}

Integer FpPoly::evaluate(const Integer &x) const {
  Integer acc = 0;
  for (std::size_t i = c_.size(); i-- > 0;)
    acc = mod(acc * x + c_[i], p_);
  return acc;
}

FpPoly operator+(const FpPoly &a, const FpPoly &b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    out[i] += b.c_[i];
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator-(const FpPoly &a, const FpPoly &b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i)
    out[i] -= b.c_[i];
  return FpPoly(a.p_, std::move(out));
}

FpPoly operator*(const FpPoly &a, const FpPoly &b) {
  if (a.is_zero() || b.is_zero())
    return FpPoly(a.p_, {});
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1, 0);
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    if (a.c_[i] == 0)
      continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      out[i + j] += a.c_[i] * b.c_[j];
  }
  return FpPoly(a.p_, std::move(out));
}

std::pair<FpPoly, FpPoly> FpPoly::divmod(const FpPoly &a, const FpPoly &b) {
  if (b.is_zero())
    throw std::domain_error("FpPoly: division by zero polynomial");
  if (a.degree() < b.degree())
    return {FpPoly(a.p_, {}), a};
  const Integer inv = inverse_mod(b.c_.back(), a.p_);
  std::vector<Integer> rem = a.c_;
  std::vector<Integer> quot(a.c_.size() - b.c_.size() + 1, 0);
  for (std::size_t k = quot.size(); k-- > 0;) {
    Integer coeff = mod(rem[k + b.c_.size() - 1] * inv, a.p_);
    quot[k] = coeff;
    if (coeff == 0)
      continue;
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      rem[k + j] = mod(rem[k + j] - coeff * b.c_[j], a.p_);
  }
  rem.resize(b.c_.size() - 1);
  return {FpPoly(a.p_, std::move(quot)), FpPoly(a.p_, std::move(rem))};
}

bool FpPoly::operator<(const FpPoly &other) const {
  if (degree() != other.degree())
    return degree() < other.degree();
  for (std::size_t i = c_.size(); i-- > 0;)
    if (c_[i] != other.c_[i])
      return c_[i] < other.c_[i];
  return false;
}

std::string FpPoly::to_string() const {
  if (is_zero())
    return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = c_.size(); i-- > 0;) {
    if (c_[i] == 0)
      continue;
    if (!first)
      os << " + ";
    first = false;
    if (c_[i] != 1 || i == 0)
      os << c_[i].get_str() << (i > 0 ? "*" : "");
    if (i > 0)
      os << "x" << (i > 1 ? "^" + std::to_string(i) : "");
  }
  return os.str();
}

FpPoly gcd(const FpPoly &a, const FpPoly &b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

FpPoly powmod(const FpPoly &base, const Integer &exponent, const FpPoly &modulus) {
  FpPoly result = FpPoly::constant(modulus.modulus(), 1) % modulus;
  FpPoly b = base % modulus;
  const auto bits = mpz_sizeinbase(exponent.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % modulus;
    if (mpz_tstbit(exponent.get_mpz_t(), i))
      result = (result * b) % modulus;
  }
  return result;
}

namespace {

// g(x^p) -> g(x); over F_p the coefficient p-th roots are the identity.
FpPoly pth_root(const FpPoly &f) {
  const unsigned long p = f.modulus().get_ui();
  std::vector<Integer> out;
  for (std::size_t i = 0; i < f.coefficients().size(); i += p)
    out.push_back(f.coefficients()[i]);
  return FpPoly(f.modulus(), std::move(out));
}

void squarefree_into(const FpPoly &monic_f, unsigned scale,
                     std::vector<std::pair<FpPoly, unsigned>> &out) {
  if (monic_f.degree() <= 0)
    return;
  const FpPoly fprime = monic_f.derivative();
  if (fprime.is_zero()) {
    squarefree_into(pth_root(monic_f).monic(), scale * monic_f.modulus().get_ui(), out);
    return;
  }
  FpPoly c = gcd(monic_f, fprime);
  FpPoly w = monic_f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly factor = (w / y).monic();
    if (factor.degree() > 0)
      out.emplace_back(factor, i * scale);
    w = y;
    c = c / y;
    ++i;
  }
  if (c.degree() > 0)
    squarefree_into(pth_root(c.monic()).monic(), scale * monic_f.modulus().get_ui(), out);
}

FpPoly random_poly(const Integer &p, int degree_below, gmp_randclass &rng) {
  std::vector<Integer> coeffs(static_cast<std::size_t>(degree_below));
  for (auto &c : coeffs)
    c = rng.get_z_range(p);
  return FpPoly(p, std::move(coeffs));
}

void equal_degree_split(const FpPoly &f, unsigned d, gmp_randclass &rng,
                        std::vector<FpPoly> &out) {
  if (f.degree() <= static_cast<int>(d)) {
    out.push_back(f.monic());
    return;
  }
  const Integer &p = f.modulus();
  Integer exponent;
  mpz_pow_ui(exponent.get_mpz_t(), p.get_mpz_t(), d);
  exponent = (exponent - 1) / 2;
  for (;;) {
    FpPoly a = random_poly(p, f.degree(), rng);
    if (a.degree() <= 0)
      continue;
    FpPoly b;
    if (p == 2) {
      // Trace map a + a^2 + ... + a^(2^(d-1)) of F_{2^d} over F_2.
      FpPoly term = a % f;
      b = term;
      for (unsigned i = 1; i < d; ++i) {
        term = (term * term) % f;
        b = b + term;
      }
    } else {
      b = powmod(a, exponent, f) - FpPoly::constant(p, 1);
    }
    FpPoly g = gcd(f, b);
    if (g.degree() > 0 && g.degree() < f.degree()) {
      equal_degree_split(g, d, rng, out);
      equal_degree_split((f / g).monic(), d, rng, out);
      return;
    }
  }
}

} // namespace

std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly &f) {
  if (f.is_zero())
    throw std::invalid_argument("squarefree_decomposition: zero polynomial");
  std::vector<std::pair<FpPoly, unsigned>> out;
  squarefree_into(f.monic(), 1, out);
  std::sort(out.begin(), out.end(),
            [](const auto &a, const auto &b) { return a.second < b.second; });
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly &f) {
  std::vector<std::pair<FpPoly, unsigned>> out;
  const Integer &p = f.modulus();
  FpPoly rest = f.monic();
  const FpPoly x = FpPoly::monomial(p, 1);
  FpPoly h = x % rest;
  for (unsigned d = 1; rest.degree() >= 2 * static_cast<int>(d); ++d) {
    h = powmod(h, p, rest);
    FpPoly g = gcd(rest, h - x);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0)
    out.emplace_back(rest, static_cast<unsigned>(rest.degree()));
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> fp_factorize(const FpPoly &f) {
  if (f.is_zero())
    throw std::invalid_argument("fp_factorize: zero polynomial");
  gmp_randclass rng(gmp_randinit_default);
  rng.seed(0x5eed);
  std::vector<std::pair<FpPoly, unsigned>> out;
  for (const auto &[part, multiplicity] : squarefree_decomposition(f)) {
    for (const auto &[block, d] : distinct_degree_factorization(part)) {
      std::vector<FpPoly> pieces;
      equal_degree_split(block, d, rng, pieces);
      for (auto &piece : pieces)
        out.emplace_back(std::move(piece), multiplicity);
    }
  }
  std::sort(out.begin(), out.end(), [](const auto &a, const auto &b) {
    if (a.first == b.first)
      return a.second < b.second;
    return a.first < b.first;
  });
  return out;
}

SmallField::SmallField(std::uint32_t p, unsigned e) : p_(p), e_(e), q_(1) {
  if (e < 1 || e > 3)
    throw std::invalid_argument("SmallField: extension degree must be 1, 2 or 3");
  if (p < 2 || p > (1u << 20) || !is_prime(std::uint64_t{p}))
    throw std::invalid_argument("SmallField: characteristic must be a small prime");
  for (unsigned i = 0; i < e; ++i)
    q_ *= p;
  if (e == 1)
    return;
  // Degree 2 and 3 polynomials are irreducible iff they have no root.
  const std::uint64_t tail_count = q_;
  for (std::uint64_t idx = 0; idx < tail_count; ++idx) {
    std::array<std::uint64_t, 3> m{idx % p, (idx / p) % p, (idx / p / p) % p};
    bool has_root = false;
    for (std::uint64_t r = 0; r < p && !has_root; ++r) {
      std::uint64_t value = 1;
      for (unsigned k = e; k-- > 0;)
        value = (value * r + m[k]) % p;
      has_root = value == 0;
    }
    if (!has_root) {
      for (unsigned k = 0; k < e; ++k)
        reduction_[k] = static_cast<std::uint32_t>((p - m[k]) % p);
      return;
    }
  }
  throw std::logic_error("SmallField: no irreducible polynomial found");
}

SmallField::Element SmallField::element(std::uint64_t index) const {
  Element out{0, 0, 0};
  for (unsigned k = 0; k < e_; ++k) {
    out[k] = static_cast<std::uint32_t>(index % p_);
    index /= p_;
  }
  return out;
}

SmallField::Element SmallField::from_integer(const Integer &n) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), p_);
  return {static_cast<std::uint32_t>(r.get_ui()), 0, 0};
}

SmallField::Element SmallField::add(const Element &a, const Element &b) const {
  Element out{0, 0, 0};
  for (unsigned k = 0; k < e_; ++k)
    out[k] = (a[k] + b[k]) % p_;
  return out;
}

SmallField::Element SmallField::sub(const Element &a, const Element &b) const {
  Element out{0, 0, 0};
  for (unsigned k = 0; k < e_; ++k)
    out[k] = (a[k] + p_ - b[k]) % p_;
  return out;
}

SmallField::Element SmallField::mul(const Element &a, const Element &b) const {
  std::array<std::uint64_t, 5> prod{0, 0, 0, 0, 0};
  for (unsigned i = 0; i < e_; ++i) {
    if (a[i] == 0)
      continue;
    for (unsigned j = 0; j < e_; ++j)
      prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p_;
  }
  for (unsigned k = 2 * e_ - 2; k >= e_ && k < 5; --k) {
    if (prod[k] == 0)
      continue;
    const std::uint64_t c = prod[k];
    prod[k] = 0;
    for (unsigned j = 0; j < e_; ++j)
      prod[k - e_ + j] = (prod[k - e_ + j] + c * reduction_[j]) % p_;
  }
  return {static_cast<std::uint32_t>(prod[0]), static_cast<std::uint32_t>(prod[1]),
          static_cast<std::uint32_t>(prod[2])};
}

SmallField::Element SmallField::pow(Element a, std::uint64_t k) const {
  Element result = one();
  while (k) {
    if (k & 1)
      result = mul(result, a);
    a = mul(a, a);
    k >>= 1;
  }
  return result;
}

SmallField::Element SmallField::inverse(const Element &a) const {
  if (is_zero(a))
    throw std::domain_error("SmallField: inverse of zero");
  return pow(a, q_ - 2);
}

bool SmallField::in_subfield(const Element &a, unsigned k) const {
  std::uint64_t pk = 1;
  for (unsigned i = 0; i < k; ++i)
    pk *= p_;
  return pow(a, pk) == a;
}

} // namespace semistable
