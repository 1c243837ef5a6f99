#include "holderlab/tri_complex.hpp"

#include <stdexcept>
#include <unordered_map>

namespace holderlab {

TriComplex::TriComplex(int depth) : depth_(depth) {
  if (depth < 0 || depth > TriAddress::kMaxLen)
    throw std::out_of_range("TriComplex: depth out of range");
  std::unordered_map<std::uint64_t, std::uint32_t> ids;
  auto key = [](std::uint32_t us, std::uint32_t vs) {
    return (static_cast<std::uint64_t>(us) << 32) | vs;
  };
  auto intern = [&](std::uint32_t us, std::uint32_t vs) {
    auto [it, fresh] = ids.try_emplace(key(us, vs), vertexCount());
    if (fresh) vertPos_.emplace_back(us, vs);
    return it->second;
  };

  const std::uint32_t s = 1u << depth;
  // corner positions per cell, per level, scaled by 2^depth
  std::vector<std::array<std::array<std::uint32_t, 2>, 3>> pos = {
      {{{0u, 0u}, {s, 0u}, {0u, s}}}};
  cellVerts_.resize(depth + 1);
  for (int l = 0;; ++l) {
    auto& lv = cellVerts_[l];
    lv.resize(pos.size());
    for (std::size_t i = 0; i < pos.size(); ++i)
      for (int j = 0; j < 3; ++j) lv[i][j] = intern(pos[i][j][0], pos[i][j][1]);
    if (l == depth) break;
    std::vector<std::array<std::array<std::uint32_t, 2>, 3>> next(pos.size() * 3);
    for (std::size_t i = 0; i < pos.size(); ++i) {
      for (int d = 0; d < 3; ++d) {
        auto& cell = next[i * 3 + d];
        for (int j = 0; j < 3; ++j) {
          if (j == d)
            cell[j] = pos[i][d];
          else
            cell[j] = {(pos[i][d][0] + pos[i][j][0]) / 2, (pos[i][d][1] + pos[i][j][1]) / 2};
        }
      }
    }
    pos = std::move(next);
  }
}

MuKappaReport muKappaAudit(const TriComplex& cx, const DescTree& tree, const MeasureTree& mu) {
  MuKappaReport rep;
  for (int k = 0; k < tree.layers(); ++k) {
    int level = tree.rootLevel + k;
    for (std::size_t j = 0; j < tree.cells[k].size(); ++j) {
      TriAddress addr = cx.cellAddr(level, tree.cells[k][j]);
      KappaWalk w = KappaWalk::ofAddress(addr);
      Rational kappa(1, BigInt(1) << w.kExp);
      ++rep.nodesChecked;
      const Rational& m = mu.mu[k][j];
      if (m > kappa) ++rep.violations;
      double ratio = static_cast<double>(m * (BigInt(1) << w.kExp));
      if (ratio > rep.maxMuOverKappa) rep.maxMuOverKappa = ratio;
    }
  }
  return rep;
}

std::vector<FrontStatsRow> frontStats(const TriComplex& cx, const VertexField<double>& f,
                                      double r, double d1, int nMax) {
  if (2 * nMax - 1 > cx.depth())
    throw std::out_of_range("frontStats: need depth >= 2*nMax-1 to sample family nMax");
  if (!(d1 > 0 && d1 <= 0.5)) throw std::invalid_argument("frontStats: d1 outside (0, 1/2]");

  // bottom-up sampled value ranges of every cell's subtree
  std::vector<std::vector<std::pair<double, double>>> range(cx.depth() + 1);
  for (int l = cx.depth(); l >= 0; --l) {
    range[l].resize(cx.cellCount(l));
    for (std::uint64_t i = 0; i < cx.cellCount(l); ++i) {
      auto [lo, hi] = cellValueRange(cx, f, l, i);
      if (l < cx.depth()) {
        for (int c = 0; c < 3; ++c) {
          const auto& cr = range[l + 1][i * 3 + c];
          if (cr.first < lo) lo = cr.first;
          if (cr.second > hi) hi = cr.second;
        }
      }
      range[l][i] = {lo, hi};
    }
  }

  std::vector<FrontStatsRow> rows;
  for (int n = 1; n <= nMax; ++n) {
    FrontStatsRow row;
    row.n = n;
    const double kappaFloor = std::exp2(-n * d1);
    for (std::uint64_t i = 0; i < cx.cellCount(n); ++i) {  // front statistics on tau_n
      if (!cellStraddles(cx, f, n, i, r)) continue;
      ++row.frontSize;
      KappaWalk w = KappaWalk::ofAddress(cx.cellAddr(n, i));
      double kappa = std::exp2(-w.kExp);
      if (kappa >= kappaFloor) row.highcondMass += kappa;
    }
    // family-n statistics across levels n..2n-1
    for (int level = n; level <= 2 * n - 1; ++level) {
      for (std::uint64_t i = 0; i < cx.cellCount(level); ++i) {
        KappaWalk w = KappaWalk::ofAddress(cx.cellAddr(level, i));
        if (!w.schemeState || w.schemeIndex != n) continue;
        double kappa = std::exp2(-w.kExp);
        auto [lo, hi] = range[level][i];
        if (lo < r && r < hi && kappa > row.maxKappaMeeting) row.maxKappaMeeting = kappa;
        if (kappa >= kappaFloor) row.imageMassBound += hi - lo;
      }
    }
    row.certLowBox =
        !(row.highcondMass < 0.5) ||
        static_cast<double>(row.frontSize) >= std::exp2(n * d1 - 1);
    row.lowBoxSlope = row.frontSize ? std::log2(static_cast<double>(row.frontSize)) / n : 0.0;
    rows.push_back(row);
  }
  return rows;
}

}  // namespace holderlab
