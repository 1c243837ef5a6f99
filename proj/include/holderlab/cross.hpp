#pragma once

// The cross-shaped square carpet and its phase-transition calculus.
//
// Tile [0,1]^2 by 2^m x 2^m closed squares and omit every square whose
// boundary meets a midsegment (x = 1/2 or y = 1/2) without touching the sides
// of [0,1]^2.  The p = 2^{2m} - 2^{m+2} + 12 retained squares generate an IFS
// whose attractor is the carpet.  Retained squares split into four thick
// quadrant blocks of (2^{m-1}-1)^2 squares and eight thin squares sitting on
// the two middle rows/columns.
//
// A conductivity scheme with parameter L discounts descent steps by square
// type (corner 1, thin/corner-neighbor 1/2, shallow block 1/3, deep block
// 1/L); the per-front-cell descendant inequality is audited here, and the
// resulting level-set dimension window (feasible iff L > 9) is computed by
// transitionBounds.  crossPhi* implement the 1/m-Hölder witness driven by the
// base-2^m digit alphabet {2^{m-1}-1, 2^{m-1}}.

#include "holderlab/levelset.hpp"
#include "holderlab/rng.hpp"

#include <array>
#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace holderlab {

class CrossModel {
 public:
  explicit CrossModel(int m);  // 2 <= m <= 12

  int m() const { return m_; }
  int side() const { return 1 << m_; }         // squares per axis
  int half() const { return 1 << (m_ - 1); }   // h: midline columns are h-1, h
  int p() const { return static_cast<int>(squares_.size()); }
  static std::int64_t pFormula(int m);          // 2^{2m} - 2^{m+2} + 12

  bool retained(int i, int j) const;
  const std::vector<std::pair<int, int>>& squares() const { return squares_; }
  int indexOf(int i, int j) const;              // -1 when omitted

  // edge-adjacency graph of the retained squares is connected
  bool connected() const;

  // taxonomy
  bool isCornerSquare(int i, int j) const;      // contains a vertex of [0,1]^2
  bool isThin(int i, int j) const;              // its row or column section meets only 2 squares
  int blockDepth(int i, int j) const;           // >= 1 inside the quadrant blocks, 0 on thin
  int typeOf(int i, int j, int L) const;        // 1..4 (type 4 iff 2*depth >= L)
  static Rational kappaFactor(int type, int L); // 1, 1/2, 1/3, 1/L

  void writeJson(std::ostream& out) const;      // {"m":..,"p":..,"squares":[[i,j],..]}
  // parse and validate against a freshly generated model; throws on mismatch
  static CrossModel parseJson(std::istream& in);

 private:
  int m_;
  std::vector<std::pair<int, int>> squares_;     // lexicographic (i, j)
  std::vector<int> index_;                       // side*side -> squares_ index or -1
};

struct CrossTypeCounts {
  std::int64_t t1 = 0, t2 = 0, t3 = 0, t4 = 0;
  std::int64_t thin = 0;
  double aL = 0;  // t3 / 2^m
  double bL = 0;  // t4 / 2^{2m}
};
CrossTypeCounts crossTypeCounts(const CrossModel& model, int L);

// ---------------------------------------------------------------------------
// level-set complex adapter (uniform branching p)

class CrossComplex {
 public:
  CrossComplex(const CrossModel& model, int depth,
               std::size_t cellBudget = std::size_t(1) << 22);

  int depth() const { return depth_; }
  int branching() const { return p_; }
  unsigned cellVertexCount() const { return 4; }
  std::size_t cellCount(int level) const { return cellVerts_.at(level).size(); }
  // order: origin, +x, +y, +xy
  const std::uint32_t* cellVertices(int level, std::uint64_t idx) const {
    return cellVerts_[level][idx].data();
  }

  std::uint32_t vertexCount() const { return static_cast<std::uint32_t>(vertPos_.size()); }
  // coordinates scaled by 2^(depth*m)
  std::pair<std::uint32_t, std::uint32_t> vertexScaled(std::uint32_t id) const {
    return vertPos_[id];
  }
  int scaleExp() const { return depth_ * m_; }
  std::uint32_t cellWidthScaled(int level) const {
    return std::uint32_t(1) << ((depth_ - level) * m_);
  }
  // base-p digits of a cell index, root first
  std::vector<int> cellDigits(int level, std::uint64_t idx) const;

 private:
  int m_, depth_, p_;
  std::vector<std::vector<std::array<std::uint32_t, 4>>> cellVerts_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> vertPos_;
};

// conductivity of a level-`level` cell: product of type factors along digits
Rational crossKappa(const CrossModel& model, const CrossComplex& cx, int L,
                    int level, std::uint64_t idx);

// ---------------------------------------------------------------------------
// test fields and the conductivity audit

enum class CrossFieldKind { RampX, RampY, PhiRamp };

// RampX/RampY: strictly monotone piecewise-linear ramp of one coordinate with
// random finest-grid increments; PhiRamp: a * phi(x) + b with random a, b
VertexField<double> crossTestField(const CrossComplex& cx, CrossFieldKind kind,
                                   const CounterRng& rng, std::uint64_t counter);

// r uniform inside the sampled value range, >= guard away from every vertex value
double crossGuardedQuery(const CrossComplex& cx, const VertexField<double>& f,
                         const CounterRng& rng, std::uint64_t counter,
                         double guard = 0x1.0p-40, int maxTries = 4096);

struct CrossConductivityReport {
  std::size_t parentsChecked = 0;
  std::size_t comparisons = 0;   // (parent, descendant-level) pairs
  std::size_t violations = 0;
  double minSlack = 0;           // min of (descendant kappa sum - parent kappa)
};
// for every front cell Q at every level and every deeper level k, the
// r-descendants of Q in the level-k front carry at least kappa(Q)
CrossConductivityReport crossConductivityAudit(const CrossModel& model,
                                               const CrossComplex& cx,
                                               const VertexField<double>& f,
                                               double r, int L);

// ---------------------------------------------------------------------------
// the 1/m-Hölder witness phi

// exact phi at the point with the given base-2^m digits (gap digits floor to
// the nearest alphabet point below, matching the continuous extension)
Rational crossPhiEval(int m, const std::vector<int>& digits);

// sup_{x != y} |phi(x)-phi(y)| / |x-y|^{1/m}  is at most this
double crossPhiHolderBound(int m);  // 2 ((2^m-1)/(2^m-2))^{1/m}

struct CrossPhiSampleReport {
  double maxRatio = 0;
  double bound = 0;
  std::size_t pairs = 0;
  bool pass = false;
};
CrossPhiSampleReport crossPhiHolderSample(int m, int depthDigits,
                                          std::size_t pairs, std::uint64_t seed);

// squares of the level-n tiling met by the vertical line x = x_r where the
// digits of x_r are h-1+bits[l]; counts[l-1] = #squares at level l (= 2^l)
struct SectionCountReport {
  std::vector<std::uint64_t> counts;
  double slope = 0;  // log2(counts[n-1]) / (n m), the box-count slope (~ 1/m)
};
SectionCountReport levelSectionCount(const CrossModel& model,
                                     const std::vector<int>& bits, int n);

// ---------------------------------------------------------------------------
// standard piecewise-affine approximation

struct CrossApproxReport {
  VertexField<double> approx;  // on the same (n+1)-deep complex as f
  bool standardOk = true;      // every fine cell is affine in one coordinate
  bool anchorsOk = true;       // agrees with f on the level-n vertices
  double sampledLip = 0;       // max |d approx| / dist over fine-cell edges
  double lipBound = 0;         // 2^{m-1} * lipConstM
  bool lipOk = true;
};
// blocks freeze the shared parent-corner value, thin corridors interpolate
// linearly between the flanking corner values
CrossApproxReport piecewiseAffineApprox(const CrossModel& model,
                                        const CrossComplex& cx,
                                        const VertexField<double>& f, int n,
                                        double lipConstM);

// ---------------------------------------------------------------------------
// phase-transition bookkeeping

struct TransitionRecord {
  int m = 0, L = 0;
  double alpha = 0;
  bool feasible = false;      // log2/log3 > log4/logL, i.e. L > 9
  double alpha1 = 0;          // (log3 log4) / (log2 logL)
  bool rangeNonempty = false; // alpha > alpha1
  double betaLow = 0, betaHigh = 0;  // open admissible interval for beta
  double dStarLower = 0;      // betaHigh / m (supremum of certified dims)
  double smallAlphaDim = 0;   // 1/m, the dimension in the small-alpha regime
};
TransitionRecord transitionBounds(int m, int L, double alpha);

// L where log2/log3 - log4/logL changes sign, located by bisection (= 9)
double feasibilityThresholdL();

// per-level geometric ratio c of the image-measure series: with q3 = ln2/ln3,
// qL = ln2/lnL,
//   ln c = -m alpha ln2 + (1 - ln(1 - beta q3)) + (1-(beta-eps) q3) ln(aL 2^m)
//        + (1 - ln(beta qL)) + (beta+eps) qL 2m ln2 + ln(K+4)
double crossCExponent(int m, int L, double alpha, double beta, double eps,
                      double aL, double K);

}  // namespace holderlab
