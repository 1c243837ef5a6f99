#pragma once

// Triangle adapter for the level-set engine, plus the triangle-specific
// audits: random Hölder test fields, the measure-vs-conductivity audit and
// per-level front statistics.
//
// Vertex coordinates are stored as integers scaled by 2^depth (midpoints stay
// integral down to the sampled depth), so positions are exact and cheap.

#include "holderlab/levelset.hpp"
#include "holderlab/rng.hpp"
#include "holderlab/tri.hpp"

#include <array>
#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

namespace holderlab {

class TriComplex {
 public:
  explicit TriComplex(int depth);

  int depth() const { return depth_; }
  int branching() const { return 3; }
  unsigned cellVertexCount() const { return 3; }
  std::size_t cellCount(int level) const { return cellVerts_.at(level).size(); }
  const std::uint32_t* cellVertices(int level, std::uint64_t idx) const {
    return cellVerts_[level][idx].data();
  }
  TriAddress cellAddr(int level, std::uint64_t idx) const {
    return TriAddress::fromLevelIndex(level, idx);
  }
  double cellDiam(int level) const { return std::ldexp(1.0, -level); }

  std::uint32_t vertexCount() const { return static_cast<std::uint32_t>(vertPos_.size()); }
  // coordinates scaled by 2^depth
  std::pair<std::uint32_t, std::uint32_t> vertexScaled(std::uint32_t id) const {
    return vertPos_[id];
  }
  Point vertexPoint(std::uint32_t id) const {
    auto [us, vs] = vertPos_[id];
    return {Dyadic(BigInt(us), depth_), Dyadic(BigInt(vs), depth_)};
  }

 private:
  int depth_;
  std::vector<std::vector<std::array<std::uint32_t, 3>>> cellVerts_;
  std::vector<std::pair<std::uint32_t, std::uint32_t>> vertPos_;
};

// ---------------------------------------------------------------------------
// random Hölder fields by midpoint displacement

struct HolderMeta {
  double c = 0;
  double alpha = 0;
};

struct HolderFieldResult {
  VertexField<double> field;
  HolderMeta meta;
  double maxRatio = 0;  // audited sup |f(x)-f(y)| / (c |x-y|^alpha), <= 1 on success
  int retries = 0;
};

// Midpoint value = average of the two edge endpoints plus a uniform
// perturbation of magnitude (c/4) * (1 - 2^(alpha-1)) * diam(level)^alpha —
// within the (c/4) * diam^alpha cap, shrunk by the geometric-decay factor so
// the declared constant survives the audit.  Each draw fails the exhaustive
// vertex-pair audit with small probability; failed draws are redrawn.  The
// audit is O(#vertices^2); pass audit = false to accept the first draw on the
// strength of the decay factor alone (maxRatio is then reported as 0).
HolderFieldResult randomHolderField(const TriComplex& cx, std::uint64_t seed, double c,
                                    double alpha, double perturbFactor = 1.0,
                                    int maxRetries = 16, bool audit = true);

// exhaustive vertex-pair audit: returns sup |df| / (c * dist^alpha)
double holderAuditField(const TriComplex& cx, const VertexField<double>& f, double c,
                        double alpha);

// r uniform inside conv(f(V)) but at least `guard` away from every vertex value
double guardedQuery(const TriComplex& cx, const VertexField<double>& f, const CounterRng& rng,
                    std::uint64_t counter, double guard = 0x1.0p-40, int maxTries = 4096);

// ---------------------------------------------------------------------------
// audits against the conductivity scheme

struct MuKappaReport {
  std::size_t nodesChecked = 0;
  std::size_t violations = 0;
  double maxMuOverKappa = 0;
};

// mu(T) <= kappa(T) for every tree node (kappa from KappaWalk on the address)
MuKappaReport muKappaAudit(const TriComplex& cx, const DescTree& tree, const MeasureTree& mu);

struct FrontStatsRow {
  int n = 0;
  std::uint64_t frontSize = 0;   // #G_n(r)
  double maxKappaMeeting = 0;    // max kappa over family-n cells meeting the level set
  double highcondMass = 0;       // sum of kappa over front cells with kappa >= 2^(-n d1)
  double imageMassBound = 0;     // sum of sampled |f(T)| over family-n cells, kappa >= 2^(-n d1)
  bool certLowBox = true;        // highcondMass < 1/2  implies  frontSize >= 2^(n d1 - 1)
  double lowBoxSlope = 0;        // log2(frontSize) / n
};

// Requires depth >= 2*nMax - 1 so family nMax is fully sampled.  "Meets the
// level set" uses the sound finite certificate: the cell's sampled subtree
// values straddle r (by continuity the cell then really crosses f^{-1}(r)).
std::vector<FrontStatsRow> frontStats(const TriComplex& cx, const VertexField<double>& f,
                                      double r, double d1, int nMax);

}  // namespace holderlab
