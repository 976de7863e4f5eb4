#include "semistable/univariate.hpp"

#include <sstream>
#include <stdexcept>

namespace semistable {

int degree_of(std::span<const Integer> f) {
  for (int i = static_cast<int>(f.size()) - 1; i >= 0; --i)
    if (f[static_cast<std::size_t>(i)] != 0)
      return i;
  return -1;
}

Coefficients derivative(std::span<const Integer> f) {
  if (f.size() <= 1)
    return {Integer(0)};
  Coefficients out(f.size() - 1);
  for (std::size_t i = 1; i < f.size(); ++i)
    out[i - 1] = f[i] * static_cast<unsigned long>(i);
  return out;
}

IntMatrix sylvester_matrix(std::span<const Integer> f, std::span<const Integer> g) {
  const int m = degree_of(f);
  const int n = degree_of(g);
  if (m < 0 || n < 0)
    throw std::invalid_argument("sylvester_matrix: zero polynomial");
  const auto size = static_cast<std::size_t>(m + n);
  IntMatrix s(size, size);
  // Columns are ordered by decreasing power of x.
  for (int r = 0; r < n; ++r)
    for (int i = 0; i <= m; ++i)
      s(static_cast<std::size_t>(r), static_cast<std::size_t>(r + m - i)) = f[static_cast<std::size_t>(i)];
  for (int r = 0; r < m; ++r)
    for (int i = 0; i <= n; ++i)
      s(static_cast<std::size_t>(n + r), static_cast<std::size_t>(r + n - i)) = g[static_cast<std::size_t>(i)];
  return s;
}

Integer sylvester_resultant(std::span<const Integer> f, std::span<const Integer> g) {
  const int m = degree_of(f);
  const int n = degree_of(g);
  if (m < 0 || n < 0)
    throw std::invalid_argument("sylvester_resultant: zero polynomial");
  if (m + n < 1)
    throw std::invalid_argument("sylvester_resultant: both inputs are constants");
  return bareiss_determinant(sylvester_matrix(f, g));
}

Integer sylvester_resultant(const IntPoly &f, const IntPoly &g) {
  if (f.is_zero() || g.is_zero())
    throw std::invalid_argument("sylvester_resultant: zero polynomial");
  if (f.variables() != g.variables() || f.num_variables() != 1)
    throw std::invalid_argument("sylvester_resultant: inputs must be univariate in the same variable");
  return sylvester_resultant(f.univariate_coefficients(), g.univariate_coefficients());
}

Integer discriminant(std::span<const Integer> f) {
  const int n = degree_of(f);
  if (n < 2)
    throw std::invalid_argument("discriminant: degree must be at least 2");
  const auto trimmed = f.first(static_cast<std::size_t>(n) + 1);
  Integer res = sylvester_resultant(trimmed, derivative(trimmed));
  mpz_divexact(res.get_mpz_t(), res.get_mpz_t(), trimmed.back().get_mpz_t());
  if ((n * (n - 1) / 2) % 2 != 0)
    res = -res;
  return res;
}

Integer discriminant(const IntPoly &f) { return discriminant(f.univariate_coefficients()); }

BinaryForm::BinaryForm(unsigned deg, Coefficients coeffs)
    : degree(deg), coefficients(std::move(coeffs)) {
  if (coefficients.size() != degree + 1)
    throw std::invalid_argument("BinaryForm: expected degree + 1 coefficients");
}

bool BinaryForm::is_zero() const { return degree_of(coefficients) < 0; }

Integer BinaryForm::evaluate(const Integer &x, const Integer &z) const {
  // Homogeneous Horner: acc <- acc * x + c_i * z^(degree - i).
  Integer acc = coefficients[degree];
  Integer zpow = 1;
  for (unsigned i = degree; i-- > 0;) {
    zpow *= z;
    acc = acc * x + coefficients[i] * zpow;
  }
  return acc;
}

BinaryForm BinaryForm::derivative_x() const {
  if (degree == 0)
    throw std::invalid_argument("BinaryForm::derivative_x: degree 0 form");
  Coefficients out(degree);
  for (unsigned i = 1; i <= degree; ++i)
    out[i - 1] = coefficients[i] * i;
  return BinaryForm(degree - 1, std::move(out));
}

std::string BinaryForm::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned k = degree + 1; k-- > 0;) {
    const Integer &c = coefficients[k];
    if (c == 0)
      continue;
    os << (first ? (c < 0 ? "-" : "") : (c < 0 ? " - " : " + "));
    first = false;
    const Integer mag = abs(c);
    const unsigned zexp = degree - k;
    bool star = false;
    if (mag != 1 || (k == 0 && zexp == 0)) {
      os << mag.get_str();
      star = true;
    }
    if (k > 0) {
      os << (star ? "*" : "") << "x" << (k > 1 ? "^" + std::to_string(k) : "");
      star = true;
    }
    if (zexp > 0)
      os << (star ? "*" : "") << "z" << (zexp > 1 ? "^" + std::to_string(zexp) : "");
  }
  return first ? "0" : os.str();
}

BinaryForm homogenize_binary(std::span<const Integer> f, unsigned target_degree) {
  const int d = degree_of(f);
  if (d > static_cast<int>(target_degree))
    throw std::invalid_argument("homogenize_binary: target degree below polynomial degree");
  Coefficients coeffs(target_degree + 1, 0);
  for (int i = 0; i <= d; ++i)
    coeffs[static_cast<std::size_t>(i)] = f[static_cast<std::size_t>(i)];
  return BinaryForm(target_degree, std::move(coeffs));
}

BinaryForm homogenize_binary(const IntPoly &f, unsigned target_degree) {
  return homogenize_binary(f.univariate_coefficients(), target_degree);
}

Integer discriminant(const BinaryForm &f) {
  if (f.degree == 0)
    throw std::invalid_argument("discriminant: binary form of degree 0");
  Integer scale = 1;
  unsigned n = f.degree;
  while (n >= 1 && f.coefficients[n] == 0) {
    if (n == 1 || f.coefficients[n - 1] == 0)
      return 0; // double root at infinity, or the zero form
    scale *= f.coefficients[n - 1] * f.coefficients[n - 1];
    --n;
  }
  if (n == 1)
    return scale;
  return scale * discriminant(std::span<const Integer>(f.coefficients).first(n + 1));
}

} // namespace semistable
