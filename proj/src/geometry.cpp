#include "holderlab/geometry.hpp"

namespace holderlab {

bool Affine::isDirectSimilarity(const Dyadic& rho) const {
  Dyadic r2 = rho * rho;
  if (sqLenEquilateral(a, c) != r2) return false;            // image of (1,0)
  if (sqLenEquilateral(b, d) != r2) return false;            // image of (0,1)
  if (sqLenEquilateral(a - b, c - d) != r2) return false;    // image of (1,-1)
  return det().sign() > 0;
}

Affine solveDirectSimilarity(const Point& p1, const Point& q1,
                             const Point& p2, const Point& q2,
                             const Dyadic& rho) {
  Point dp = p2 - p1, dq = q2 - q1;
  if (dp.u.isZero() && dp.v.isZero())
    throw std::invalid_argument("solveDirectSimilarity: coincident source points");
  if (sqLenEquilateral(dq.u, dq.v) != rho * rho * sqLenEquilateral(dp.u, dp.v))
    throw std::domain_error("solveDirectSimilarity: pinned images violate the ratio");
  for (const Affine& rot : {rot0(), rot120(), rot240()}) {
    Affine lin{rot.a * rho, rot.b * rho, rot.c * rho, rot.d * rho, Dyadic(), Dyadic()};
    Point im = lin.apply(dp);
    if (im == dq) {
      Point lp1 = lin.apply(p1);
      Affine full{lin.a, lin.b, lin.c, lin.d, q1.u - lp1.u, q1.v - lp1.v};
      return full;
    }
  }
  throw std::domain_error(
      "solveDirectSimilarity: rotation is not a multiple of 120 degrees");
}

}  // namespace holderlab
