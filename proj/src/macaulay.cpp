#include "semistable/macaulay.hpp"

#include <map>
#include <random>
#include <stdexcept>

namespace semistable {

MacaulayMatrix macaulay_matrix(const TernaryForm &g1, const TernaryForm &g2,
                               const TernaryForm &g3) {
  const std::array<const TernaryForm *, 3> forms{&g1, &g2, &g3};
  const std::array<unsigned, 3> d{g1.degree(), g2.degree(), g3.degree()};
  const unsigned critical = d[0] + d[1] + d[2] - 2;
  const auto monomials = ternary_monomials(critical);
  std::map<Monomial3, std::size_t> column;
  for (std::size_t i = 0; i < monomials.size(); ++i)
    column[monomials[i]] = i;

  MacaulayMatrix out{IntMatrix(monomials.size(), monomials.size()), {}};
  for (std::size_t row = 0; row < monomials.size(); ++row) {
    const Monomial3 &a = monomials[row];
    unsigned divisible = 0;
    std::size_t owner = 3;
    for (std::size_t i = 0; i < 3; ++i) {
      if (a[i] >= d[i]) {
        ++divisible;
        if (owner == 3)
          owner = i;
      }
    }
    // owner < 3 always: sum(a) = critical > sum(d_i - 1).
    if (divisible >= 2)
      out.extraneous.push_back(row);
    Monomial3 shift = a;
    shift[owner] -= d[owner];
    for (const auto &[m, c] : forms[owner]->terms()) {
      const Monomial3 target{m[0] + shift[0], m[1] + shift[1], m[2] + shift[2]};
      out.matrix(row, column.at(target)) = c;
    }
  }
  return out;
}

namespace {

Matrix3 random_unimodular(std::mt19937_64 &rng) {
  Matrix3 m;
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      m[i][j] = (i == j) ? 1 : 0;
  // Product of elementary row operations, each of determinant one.
  for (int step = 0; step < 6; ++step) {
    const std::size_t i = rng() % 3;
    std::size_t j = rng() % 3;
    if (j == i)
      j = (j + 1) % 3;
    const long factor = static_cast<long>(rng() % 5) - 2;
    for (std::size_t c = 0; c < 3; ++c)
      m[i][c] += m[j][c] * factor;
  }
  return m;
}

} // namespace

Integer macaulay_resultant(const TernaryForm &g1, const TernaryForm &g2, const TernaryForm &g3,
                           const MacaulayOptions &options) {
  for (const TernaryForm *g : {&g1, &g2, &g3}) {
    if (g->is_zero())
      throw DegenerateInputError("macaulay_resultant: zero input form");
    if (g->degree() == 0)
      throw std::invalid_argument("macaulay_resultant: forms must have degree >= 1");
  }
  std::mt19937_64 rng(options.seed);
  TernaryForm a = g1, b = g2, c = g3;
  for (unsigned attempt = 0;; ++attempt) {
    const MacaulayMatrix mm = macaulay_matrix(a, b, c);
    const Integer minor = bareiss_determinant(mm.matrix.submatrix(mm.extraneous, mm.extraneous));
    if (minor != 0) {
      Integer full = bareiss_determinant(mm.matrix);
      if (!mpz_divisible_p(full.get_mpz_t(), minor.get_mpz_t()))
        throw std::logic_error("macaulay_resultant: extraneous factor does not divide");
      mpz_divexact(full.get_mpz_t(), full.get_mpz_t(), minor.get_mpz_t());
      return full;
    }
    if (attempt == options.max_coordinate_changes)
      throw DegenerateMinorError("macaulay_resultant: extraneous minor vanished after " +
                                 std::to_string(options.max_coordinate_changes) +
                                 " coordinate changes");
    const Matrix3 m = random_unimodular(rng);
    a = g1.compose(m);
    b = g2.compose(m);
    c = g3.compose(m);
  }
}

TernaryForm hessian_minor_xy(const TernaryForm &f) {
  if (f.degree() < 2)
    throw std::invalid_argument("hessian_minor_xy: degree must be at least 2");
  const TernaryForm fx = f.partial(0);
  const TernaryForm fy = f.partial(1);
  const TernaryForm fxx = fx.partial(0);
  const TernaryForm fyy = fy.partial(1);
  const TernaryForm fxy = fx.partial(1);
  return fxx * fyy - fxy * fxy;
}

Integer plane_disc_proxy(const TernaryForm &f, const MacaulayOptions &options) {
  if (f.degree() < 2)
    throw std::invalid_argument("plane_disc_proxy: degree must be at least 2");
  if (f.degree() > kMaxPlaneDegree)
    throw std::invalid_argument("plane_disc_proxy: degree above supported maximum");
  const TernaryForm fx = f.partial(0), fy = f.partial(1), fz = f.partial(2);
  // A vanishing partial means every point where the other two vanish is
  // singular, and two ternary forms always share a projective zero.
  if (fx.is_zero() || fy.is_zero() || fz.is_zero())
    return 0;
  return macaulay_resultant(fx, fy, fz, options);
}

Integer transversality_resultant(const TernaryForm &f, const MacaulayOptions &options) {
  if (f.degree() < 3)
    throw std::invalid_argument("transversality_resultant: degree must be at least 3");
  if (f.degree() > kMaxPlaneDegree)
    throw std::invalid_argument("transversality_resultant: degree above supported maximum");
  const TernaryForm h = hessian_minor_xy(f);
  if (h.is_zero())
    throw ZeroHessianMinorError("transversality_resultant: H_xy vanishes identically");
  const TernaryForm fx = f.partial(0), fy = f.partial(1);
  if (fx.is_zero() || fy.is_zero())
    return 0;
  return macaulay_resultant(h, fx, fy, options);
}

} // namespace semistable
