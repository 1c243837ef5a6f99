#pragma once

// The three bound curves tying Hölder exponents to level-set dimensions, their
// bisection inverses, and the associated series exponents.
//
//   hLower(d)  = (-d ln d - (1-d) ln(1-d) + d ln 6) / ((1+d) ln 2)   on (0, 1/2]
//   hLowerBox(d) = ((1-d) ln(1-d) - d ln d - (1-2d) ln(1-2d) + d ln 3) / ln 2
//                                                                    on (0, 1/3]
//   hUpper(t)  = (-(1-t) log2(1-t) - t log2 t + t) / (1+t)           on (0, 1/2]
//
// All three are strictly increasing; hUpper maps onto (0, 1].

#include "holderlab/scheme.hpp"

#include <iosfwd>
#include <vector>

namespace holderlab {

enum class BoundKind { Lower, LowerBox, Upper };

double domainMax(BoundKind k);           // 1/2, 1/3, 1/2
double evalH(BoundKind k, double t);     // throws std::domain_error off (0, domainMax]
// bisection inverse; post: |evalH(k, t) - alpha| <= tol
double invertH(BoundKind k, double alpha, double tol = 1e-12);

// series exponents (natural logarithms)
double exponentC(double d1, double alpha);     // (hLower(d1) - alpha) (1+d1) ln 2
double exponentCBox(double d1, double alpha);  // (hLowerBox(d1) - alpha) ln 2

// ln M_n for the two counting series
//   M_n      = sum_{k <= n d1} C(n,k) 6^k 2^{-(n+k) alpha}
//   M_n^box  = 6 sum_{k <= n d1} C(n-k,k) 3^k 2^{-n alpha}
// Exact big-integer binomials feed the sum for n <= 300, log-gamma above.
double seriesLogM(int n, double d1, double alpha);
double seriesLogMBox(int n, double d1, double alpha);

struct CurveRow {
  double alpha;
  double lowerRaw;        // hLower^{-1}(alpha)
  double lowerHausdorff;  // lowerRaw / (1 + lowerRaw)
  double lowerBox;        // hLowerBox^{-1}(alpha)
  double upperRaw;        // hUpper^{-1}(alpha)
  double upper;           // upperRaw / (1 + upperRaw)
};

// grid of steps+1 points over [alphaMin, alphaMax] in (0,1), linear or log
std::vector<CurveRow> curveTable(double alphaMin, double alphaMax, int steps, bool logGrid);

// "alpha,lower_raw,lower_hausdorff,lower_box,upper_raw,upper", 17 significant digits
void writeCurveCsv(std::ostream& out, const std::vector<CurveRow>& rows);

// ordering invariants on a computed table (lower_hausdorff <= upper,
// lower_box >= lower_hausdorff, every column inside (0, 1])
bool curveInvariantsHold(const std::vector<CurveRow>& rows);

// relative upper/lower gap (hUpper^{-1} - hLower^{-1}) / hUpper^{-1}
double asymptoticGap(double alpha);

}  // namespace holderlab
