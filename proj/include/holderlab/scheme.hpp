#pragma once

// The conductivity scheme on the triangle subdivision tree.
//
// Family 1 is tau_1 with conductivity 1.  A family-n member T with last digit
// d contributes seven family-(n+1) members: the child T.child(d) at unchanged
// conductivity, and all six grandchildren of the other two children at half
// conductivity.  Members of family n sit at levels n .. 2n-1 and satisfy
// kappa = 2^{n - level} exactly.

#include "holderlab/tri.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace holderlab {

struct SchemeNode {
  TriAddress addr;
  std::uint8_t kExp;  // kappa = 2^{-kExp}
};

class ConductivityScheme {
 public:
  static constexpr std::size_t kDefaultNodeBudget = std::size_t(1) << 26;

  // families 1..maxN; throws std::length_error when the budget would be blown
  static ConductivityScheme expand(int maxN, std::size_t nodeBudget = kDefaultNodeBudget);

  int maxN() const { return static_cast<int>(families_.size()); }
  const std::vector<SchemeNode>& family(int n) const { return families_.at(n - 1); }

  // JSONL, one {"address":"...","n":..,"kExp":..} object per node, family order
  void writeAtlas(std::ostream& out) const;
  // CSV "n,kExp,count" with exact per-root counts times three (all roots)
  void writeHistogram(std::ostream& out) const;

 private:
  std::vector<std::vector<SchemeNode>> families_;
};

// exact per-root census of family n by kappa exponent k = 0..n-1
std::vector<BigInt> perRootCensus(int n);           // closed form C(n-1,k)*6^k
std::vector<BigInt> perRootCensusRecursive(int n);  // h[k] <- h[k] + 6 h[k-1]
BigInt familySize(int n);                           // 3 * 7^(n-1)

BigInt binomial(int n, int k);

// Exhaustive antichain-cover check: every level-(2n-1) address has exactly one
// ancestor-or-self in family n.  Cost 3^(2n-1); keep n modest.
bool coverAuditExhaustive(int n);

}  // namespace holderlab
