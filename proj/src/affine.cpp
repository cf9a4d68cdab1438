#include "affleib/affine.hpp"

namespace affleib {

AffinePoint heap(const AffinePoint& a, const AffinePoint& b, const AffinePoint& c) { return a - b + c; }

AffinePoint act(const Scalar& alpha, const AffinePoint& a, const AffinePoint& b) {
  return (a.field().one() - alpha) * a + alpha * b;
}

AffinePoint translate(const AffinePoint& o, const AffinePoint& u, const AffinePoint& a) { return heap(a, o, u); }

}  // namespace affleib
