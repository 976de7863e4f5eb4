#pragma once

#include <cstdint>

#include "semistable/errors.hpp"
#include "semistable/integer_arith.hpp"
#include "semistable/linear_algebra.hpp"
#include "semistable/ternary_form.hpp"

namespace semistable {

/// The extraneous Macaulay minor vanished under every coordinate change tried.
class DegenerateMinorError : public DegenerateInputError {
public:
  using DegenerateInputError::DegenerateInputError;
};

/// H_xy is identically zero, so the transversality criterion is unusable.
class ZeroHessianMinorError : public DegenerateInputError {
public:
  using DegenerateInputError::DegenerateInputError;
};

struct MacaulayOptions {
  std::uint64_t seed = 0x6d6163756c6179ULL;
  unsigned max_coordinate_changes = 8;
};

/// Square matrix in the critical degree D = d1 + d2 + d3 - 2 together with the
/// row/column indices of the non-reduced monomials (divisible by at least two
/// of x^d1, y^d2, z^d3), whose submatrix is the extraneous factor.
struct MacaulayMatrix {
  IntMatrix matrix;
  std::vector<std::size_t> extraneous;
};

MacaulayMatrix macaulay_matrix(const TernaryForm &g1, const TernaryForm &g2, const TernaryForm &g3);

/// Res(g1, g2, g3), normalized by Res(x^a, y^b, z^c) = 1. Homogeneous of
/// degree d2*d3 in the coefficients of g1 (and symmetrically).
///
/// When the extraneous minor vanishes the forms are moved by pseudo-random
/// SL3(Z) substitutions, which leave the resultant unchanged; after
/// `max_coordinate_changes` failures a DegenerateMinorError is thrown.
Integer macaulay_resultant(const TernaryForm &g1, const TernaryForm &g2, const TernaryForm &g3,
                           const MacaulayOptions &options = {});

/// f_xx * f_yy - f_xy^2, of degree 2(d - 2). Rejects d < 2.
TernaryForm hessian_minor_xy(const TernaryForm &f);

/// D(f) = Res(f_x, f_y, f_z): zero iff the curve f = 0 is singular. Equals
/// the normalized plane-curve discriminant up to a power of d.
Integer plane_disc_proxy(const TernaryForm &f, const MacaulayOptions &options = {});

/// R(f) = Res(H_xy, f_x, f_y). Rejects d < 3; throws ZeroHessianMinorError
/// when H_xy vanishes identically.
Integer transversality_resultant(const TernaryForm &f, const MacaulayOptions &options = {});

/// Largest plane-curve degree accepted by the plane-curve tooling.
inline constexpr unsigned kMaxPlaneDegree = 5;

} // namespace semistable
