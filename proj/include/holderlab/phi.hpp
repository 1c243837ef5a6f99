#pragma once

// The Hölder witness on the triangle.
//
// Nine generator maps indexed by digit in {0,1,2,3} and branch in {1,2} (the
// two digit-3 branches coincide) carve the triangle into digit cylinders
//   Delta_iota = union over branch choices of composed images,  iota a digit
// string.  Digit-1-free cylinders meet side AB in a single exact segment;
// ordering those segments by distance from corner B induces a total order
// "<4" on equal-length digit strings, computed geometrically here.
//
// A witness instance fixes a block length kstar and a budget w of non-3
// digits per block; the admissible blocks (at most w non-3 digits) are sorted
// by the geometric order, once per entering orientation parity: appending
// digit 0 reverses the AB direction (its branch maps corner A onto B), so the
// effective block order flips with the parity of preceding 0-digits.  That
// flip rule powers the fast rank counter; it is re-validated against the
// geometric order on every construction, and rank counting is cross-checked
// against a brute-force enumeration in the tests.
//
// phi maps the cylinder with rank k at block depth mu onto [k/N^mu, (k+1)/N^mu]
// (N = #admissible); vertices get exact rational values via eventually-all-3
// digit chains.

#include "holderlab/geometry.hpp"
#include "holderlab/levelset.hpp"
#include "holderlab/tri.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace holderlab {

// digit strings use characters '0'..'3'
using DigitString = std::string;

struct GenMap {
  Affine map;
  std::vector<int> suffix;   // tau-address digits appended by the map (logical labels)
  std::array<int, 3> perm;   // logical corner label -> corner label of the image cell
};

class GenSystem {
 public:
  static const GenSystem& get();

  // digit in {0,1,2,3}, branch in {1,2}; digit 3 returns the same map twice
  const GenMap& at(int digit, int branch) const;
  Dyadic ratio(int digit) const { return digit == 3 ? Dyadic(1, 1) : Dyadic(1, 2); }
  int levelGain(int digit) const { return digit == 3 ? 1 : 2; }

 private:
  GenSystem();
  GenMap maps_[4][2];
};

// exact intersections of a digit-1-free cylinder with sides AB and AC
struct SideSegments {
  Segment ab, ac;
};
SideSegments sideSegments(const DigitString& iota);

// order key of the AB segment midpoint (1 - u, distance from B)
Dyadic abMidKey(const DigitString& iota);

// geometric order: a before b iff a's AB segment lies closer to corner B;
// strings must have equal length (strict total order there); -1 / 0 / +1
int compareLt4(const DigitString& a, const DigitString& b);

// one constituent triangle of Delta_iota (a specific branch choice)
struct Constituent {
  Affine map;        // the composed similarity
  TriAddress addr;   // its cell in the subdivision tree
};

// all distinct constituents; count <= 2^(#non-3 digits); digits may include 1
std::vector<Constituent> deltaIota(const DigitString& iota);

BigInt admissibleCount(int kstar, int w);  // sum_{j<=min(w,kstar)} C(kstar,j) 2^j
double log2BigInt(const BigInt& x);

class PhiWitness {
 public:
  // enumerates and geometrically sorts the admissible blocks; throws
  // std::length_error when the admissible count exceeds enumCap
  PhiWitness(int kstar, int w, std::size_t enumCap = 200000);

  int kstar() const { return kstar_; }
  int w() const { return w_; }
  const BigInt& count() const { return count_; }  // N = #admissible
  const std::vector<DigitString>& sorted(int parity) const {
    return parity ? sortedOdd_ : sortedEven_;
  }

  bool isAdmissible(const DigitString& block) const;
  // #admissible blocks strictly before `block` under the given entering
  // parity; block may be any {0,2,3} string of length kstar
  BigInt lessCount(int parity, const DigitString& block) const;

  // #{admissible m-tuples before the prefix in the flattened geometric order}
  BigInt rankCount(const std::vector<DigitString>& blocks) const;

  struct Interval {
    BigInt rank;   // value interval [rank/N^m, (rank+1)/N^m]
    int blocks;    // m
    BigInt den;    // N^m
    std::string str() const;
  };
  Interval eval(const std::vector<DigitString>& blocks) const;

  // exact phi value of the point whose digit chain is `head` followed by
  // infinitely many 3s (heads may contain non-admissible blocks)
  Rational phiOfChain(const DigitString& head) const;

  // phi on the digit-1 cylinder below `prefix` (a {0,2,3} string) is constant;
  // computed from both adjacent extreme chains, asserted equal
  Rational extendConstant(const DigitString& prefix) const;

  Rational phiVertexA() const { return phiOfChain(""); }
  Rational phiVertexB() const { return phiOfChain("0"); }
  Rational phiVertexC() const { return phiOfChain("0"); }

 private:
  void buildTables();
  void validateOrderTables() const;

  int kstar_, w_;
  BigInt count_;
  std::vector<DigitString> sortedEven_, sortedOdd_;
  std::vector<Dyadic> keysEven_, keysOdd_;  // abMidKey with context "" / "0"
  std::unordered_map<DigitString, int> idxEven_, idxOdd_;
};

// ---------------------------------------------------------------------------
// audits

// deduplicated vertex cloud of all cylinder constituents at block depths
// 1..depthBlocks, phi values exact and checked for consistency across the
// address aliases that land on the same point
struct PhiVertexSet {
  int scaleExp = 0;  // coordinates are frame (u,v) times 2^scaleExp
  std::vector<std::int64_t> us, vs;
  std::vector<Rational> values;
};
PhiVertexSet phiVertexSet(const PhiWitness& wit, int depthBlocks);

struct PhiHolderReport {
  double maxRatio = 0;  // sup |phi(x)-phi(y)| / dist^alpha over the vertex set
  double bound = 0;     // (6 N / sqrt(3))^alpha
  std::size_t vertices = 0;
  bool pass = false;
};
// throws std::domain_error when alpha > log2(N)/(kstar+w): the witness is
// only Holder up to that exponent, so larger alphas cannot be certified
PhiHolderReport phiHolderAudit(const PhiWitness& wit, double alpha, int depthBlocks);

struct LevelCellReport {
  int n = 0;
  std::uint64_t cells = 0;  // level-set cells of tau_{n(kstar+w)} along the chain
  BigInt bound;             // 2^(n w)
  std::vector<DigitString> chain;
};
// chain = successive admissible blocks of the cylinder chain of a guarded
// level; needs ceil(n(kstar+w)/kstar) blocks
LevelCellReport phiLevelCellCount(const PhiWitness& wit,
                                  const std::vector<DigitString>& chain, int n);

// the block chain selected by base-N rank digits (digit j picks the sorted
// block at that index under the running parity)
std::vector<DigitString> chainFromRankDigits(const PhiWitness& wit,
                                             const std::vector<int>& digits);

struct OptimizedParams {
  int kstar = 0, w = 0;
  BigInt count;
  double log2Count = 0;
};
// smallest kstar with  #admissible >= 2^((kstar+w) alpha)  and
// w/(kstar+w) <= hUpperInv(alpha)/(1+hUpperInv(alpha)) + eps
OptimizedParams optimizeParams(double alpha, double eps);

}  // namespace holderlab
