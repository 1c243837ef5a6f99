#include "holderlab/scheme.hpp"

#include <ostream>
#include <stdexcept>

namespace holderlab {

ConductivityScheme ConductivityScheme::expand(int maxN, std::size_t nodeBudget) {
  if (maxN < 1) throw std::invalid_argument("ConductivityScheme: maxN must be >= 1");
  ConductivityScheme s;
  s.families_.resize(maxN);
  std::size_t total = 3;
  for (int d = 0; d < 3; ++d)
    s.families_[0].push_back({TriAddress{}.child(d), 0});
  for (int n = 1; n < maxN; ++n) {
    const auto& prev = s.families_[n - 1];
    auto& next = s.families_[n];
    total += prev.size() * 7;
    if (total > nodeBudget)
      throw std::length_error("ConductivityScheme: node budget exceeded at family " +
                              std::to_string(n + 1) + " (" + std::to_string(total) +
                              " nodes > " + std::to_string(nodeBudget) + ")");
    next.reserve(prev.size() * 7);
    for (const SchemeNode& t : prev) {
      int last = t.addr.lastDigit();
      next.push_back({t.addr.child(last), t.kExp});  // run continues, kappa unchanged
      for (int j = 0; j < 3; ++j) {
        if (j == last) continue;
        TriAddress mid = t.addr.child(j);            // run broken: not a member itself,
        for (int c = 0; c < 3; ++c)                  // but all its children are
          next.push_back({mid.child(c), static_cast<std::uint8_t>(t.kExp + 1)});
      }
    }
  }
  return s;
}

void ConductivityScheme::writeAtlas(std::ostream& out) const {
  for (int n = 1; n <= maxN(); ++n)
    for (const SchemeNode& t : family(n))
      out << "{\"address\":\"" << t.addr.str() << "\",\"n\":" << n
          << ",\"kExp\":" << int(t.kExp) << "}\n";
}

void ConductivityScheme::writeHistogram(std::ostream& out) const {
  out << "n,kExp,count\n";
  for (int n = 1; n <= maxN(); ++n) {
    std::vector<BigInt> counts(n, 0);
    for (const SchemeNode& t : family(n)) ++counts.at(t.kExp);
    for (int k = 0; k < n; ++k) out << n << ',' << k << ',' << counts[k].str() << '\n';
  }
}

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

std::vector<BigInt> perRootCensus(int n) {
  std::vector<BigInt> h(n);
  BigInt pow6 = 1;
  for (int k = 0; k < n; ++k) {
    h[k] = binomial(n - 1, k) * pow6;
    pow6 *= 6;
  }
  return h;
}

std::vector<BigInt> perRootCensusRecursive(int n) {
  std::vector<BigInt> h{1};
  for (int i = 1; i < n; ++i) {
    std::vector<BigInt> next(i + 1, 0);
    for (int k = 0; k < i; ++k) {
      next[k] += h[k];
      next[k + 1] += 6 * h[k];
    }
    h = std::move(next);
  }
  return h;
}

BigInt familySize(int n) {
  BigInt r = 3;
  for (int i = 1; i < n; ++i) r *= 7;
  return r;
}

bool coverAuditExhaustive(int n) {
  const int deep = 2 * n - 1;  // deepest level family n reaches
  std::uint64_t count = 1;
  for (int i = 0; i < deep; ++i) count *= 3;
  for (std::uint64_t idx = 0; idx < count; ++idx) {
    TriAddress leaf = TriAddress::fromLevelIndex(deep, idx);
    int hits = 0;
    for (int len = n; len <= deep; ++len) {  // members of family n live at levels n..2n-1
      KappaWalk w = KappaWalk::ofAddress(leaf.prefix(len));
      if (w.schemeState && w.schemeIndex == n) ++hits;
    }
    if (hits != 1) return false;
  }
  return true;
}

}  // namespace holderlab
