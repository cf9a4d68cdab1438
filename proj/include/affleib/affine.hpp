#pragma once

// The affine space F^n with its abelian heap <a,b,c> = a - b + c and the
// scalar action alpha |>_a b = (1 - alpha) a + alpha b. Points and vectors
// share the Vec representation.

#include "affleib/exact.hpp"

namespace affleib {

using AffinePoint = Vec;

AffinePoint heap(const AffinePoint& a, const AffinePoint& b, const AffinePoint& c);
AffinePoint act(const Scalar& alpha, const AffinePoint& a, const AffinePoint& b);
/// tau_o^u(a) = <a, o, u>: the isomorphism of tangent fibres T_o -> T_u.
AffinePoint translate(const AffinePoint& o, const AffinePoint& u, const AffinePoint& a);

}  // namespace affleib
