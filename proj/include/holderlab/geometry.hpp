#pragma once

// Planar geometry over exact dyadic coordinates.
//
// Points live in the affine frame (A; B-A, C-A) of a reference triangle ABC,
// i.e. A = (0,0), B = (1,0), C = (0,1).  The triangle is *metrically*
// equilateral with unit side: the squared length of a frame vector (u,v) is
// u^2 + u*v + v^2, which is what the Euclidean embedding
//   x = u + v/2,  y = v*sqrt(3)/2
// induces.  All incidence decisions stay exact; the embedding is only for
// float-mode consumers.

#include "holderlab/dyadic.hpp"

#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace holderlab {

struct Point {
  Dyadic u, v;

  bool operator==(const Point& o) const { return u == o.u && v == o.v; }
  bool operator!=(const Point& o) const { return !(*this == o); }
  Point operator+(const Point& o) const { return {u + o.u, v + o.v}; }
  Point operator-(const Point& o) const { return {u - o.u, v - o.v}; }

  std::string str() const { return "(" + u.str() + ", " + v.str() + ")"; }
};

inline Point midpoint(const Point& a, const Point& b) {
  return {midpointValue(a.u, b.u), midpointValue(a.v, b.v)};
}

// squared Euclidean length of the frame vector (du,dv) in the equilateral metric
inline Dyadic sqLenEquilateral(const Dyadic& du, const Dyadic& dv) {
  return du * du + du * dv + dv * dv;
}

inline Dyadic sqDist(const Point& a, const Point& b) {
  Point d = a - b;
  return sqLenEquilateral(d.u, d.v);
}

// Euclidean embedding (for float-mode consumers only)
inline void embedXY(const Point& p, double& x, double& y) {
  double u = p.u.toDouble(), v = p.v.toDouble();
  x = u + 0.5 * v;
  y = v * 0.8660254037844386467637231707529362;  // sqrt(3)/2
}

// Position key along side AB (v == 0): 1 - u, i.e. the distance from B.
// Smaller key = closer to B.  Calling it off the AB side is a contract error.
inline Dyadic abOrderKey(const Point& p) {
  if (!p.v.isZero()) throw std::invalid_argument("abOrderKey: point is not on side AB");
  return Dyadic(1) - p.u;
}

struct Segment {
  Point p, q;  // endpoints, distinct

  Point mid() const { return midpoint(p, q); }
};

// affine map  (u,v) -> (a*u + b*v + tu, c*u + d*v + tv)  with exact entries
struct Affine {
  Dyadic a, b, c, d;   // linear part, row-major
  Dyadic tu, tv;       // translation

  static Affine identity() { return {1, 0, 0, 1, 0, 0}; }
  static Affine scaling(const Dyadic& rho) { return {rho, 0, 0, rho, 0, 0}; }

  Point apply(const Point& p) const {
    return {a * p.u + b * p.v + tu, c * p.u + d * p.v + tv};
  }
  Segment apply(const Segment& s) const { return {apply(s.p), apply(s.q)}; }

  // this ∘ o  (apply o first)
  Affine compose(const Affine& o) const {
    return {a * o.a + b * o.c, a * o.b + b * o.d,
            c * o.a + d * o.c, c * o.b + d * o.d,
            a * o.tu + b * o.tv + tu,
            c * o.tu + d * o.tv + tv};
  }

  Dyadic det() const { return a * d - b * c; }

  // exact similarity test in the equilateral metric: |L e|^2 == rho^2 |e|^2
  // for e = (1,0), (0,1), (1,-1), plus orientation (det > 0)
  bool isDirectSimilarity(const Dyadic& rho) const;
};

// rotations by 0/120/240 degrees about the origin, expressed in the frame
// (they permute the directions B-A -> C-B -> A-C, hence stay integral)
inline Affine rot0() { return Affine::identity(); }
inline Affine rot120() { return {-1, -1, 1, 0, 0, 0}; }
inline Affine rot240() { return {0, 1, -1, -1, 0, 0}; }

// The unique orientation-preserving similarity with ratio rho and rotation
// angle a multiple of 120 degrees mapping p1 -> q1, p2 -> q2 (p1 != p2).
// Throws std::domain_error if no such map exists (i.e. the data demand a
// rotation outside {0, 120, 240} or a different ratio).
Affine solveDirectSimilarity(const Point& p1, const Point& q1,
                             const Point& p2, const Point& q2,
                             const Dyadic& rho);

}  // namespace holderlab
