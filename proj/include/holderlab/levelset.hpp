#pragma once

// Level-set machinery, generic over a cell complex.
//
// A complex C provides
//   int depth() const                          sampled depth
//   int branching() const                      children per cell
//   std::size_t cellCount(int level) const
//   unsigned cellVertexCount() const
//   const std::uint32_t* cellVertices(int level, std::uint64_t idx) const
// with the indexing convention that cell (l, i) has children
// (l+1, i*branching() + c).  Vertex values live in a VertexField indexed by
// the complex's vertex ids.
//
// The approximating front G_l(r) is the set of level-l cells whose vertex
// values straddle r strictly; guarded queries (r bounded away from every
// sampled value) make straddling robust and keep descent trees non-empty.

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace holderlab {

using Rational = boost::multiprecision::cpp_rational;

template <class V>
struct VertexField {
  std::vector<V> values;

  const V& operator[](std::uint32_t id) const { return values[id]; }
};

template <class C, class V>
std::pair<V, V> cellValueRange(const C& cx, const VertexField<V>& f, int level,
                               std::uint64_t idx) {
  const std::uint32_t* verts = cx.cellVertices(level, idx);
  V lo = f[verts[0]], hi = lo;
  for (unsigned k = 1; k < cx.cellVertexCount(); ++k) {
    const V& val = f[verts[k]];
    if (val < lo) lo = val;
    if (hi < val) hi = val;
  }
  return {lo, hi};
}

template <class C, class V>
bool cellStraddles(const C& cx, const VertexField<V>& f, int level, std::uint64_t idx,
                   const V& r) {
  auto [lo, hi] = cellValueRange(cx, f, level, idx);
  return lo < r && r < hi;
}

// front at one level, cells in index order
template <class C, class V>
std::vector<std::uint64_t> buildFront(const C& cx, const VertexField<V>& f, int level,
                                      const V& r) {
  std::vector<std::uint64_t> front;
  for (std::uint64_t i = 0; i < cx.cellCount(level); ++i)
    if (cellStraddles(cx, f, level, i, r)) front.push_back(i);
  return front;
}

// conv(f(V(T))) must lie inside the union of the children's value intervals;
// returns the number of violating cells across levels 0..depth-1
template <class C, class V>
std::size_t coverAudit(const C& cx, const VertexField<V>& f) {
  std::size_t bad = 0;
  for (int l = 0; l + 1 <= cx.depth(); ++l) {
    for (std::uint64_t i = 0; i < cx.cellCount(l); ++i) {
      auto [plo, phi] = cellValueRange(cx, f, l, i);
      // children intervals form a chain (adjacent children share vertices),
      // so their union is an interval: take min of los / max of his
      V clo = phi, chi = plo;
      for (int c = 0; c < cx.branching(); ++c) {
        auto [lo, hi] = cellValueRange(cx, f, l + 1, i * cx.branching() + c);
        if (lo < clo) clo = lo;
        if (chi < hi) chi = hi;
      }
      if (plo < clo || chi < phi) ++bad;
    }
  }
  return bad;
}

// tree of r-descendants below one straddling cell
struct DescTree {
  int rootLevel = 0;
  // layer k holds cells at level rootLevel + k; parent[k][j] indexes layer k-1
  std::vector<std::vector<std::uint64_t>> cells;
  std::vector<std::vector<std::int32_t>> parent;

  int layers() const { return static_cast<int>(cells.size()); }
  std::size_t nodeCount() const {
    std::size_t n = 0;
    for (const auto& l : cells) n += l.size();
    return n;
  }
};

template <class C, class V>
DescTree descend(const C& cx, const VertexField<V>& f, const V& r, int rootLevel,
                 std::uint64_t rootIdx, int levels) {
  if (rootLevel + levels > cx.depth())
    throw std::out_of_range("descend: requested depth exceeds the sampled complex");
  if (!cellStraddles(cx, f, rootLevel, rootIdx, r))
    throw std::domain_error("descend: root cell does not straddle r (query not guarded?)");
  DescTree t;
  t.rootLevel = rootLevel;
  t.cells.push_back({rootIdx});
  t.parent.push_back({-1});
  for (int k = 1; k <= levels; ++k) {
    std::vector<std::uint64_t> next;
    std::vector<std::int32_t> par;
    const auto& prev = t.cells.back();
    for (std::size_t j = 0; j < prev.size(); ++j) {
      for (int c = 0; c < cx.branching(); ++c) {
        std::uint64_t child = prev[j] * cx.branching() + c;
        if (cellStraddles(cx, f, rootLevel + k, child, r)) {
          next.push_back(child);
          par.push_back(static_cast<std::int32_t>(j));
        }
      }
    }
    if (next.empty())
      throw std::domain_error("descend: empty front at level " +
                              std::to_string(rootLevel + k) + " — r outside guarded range");
    t.cells.push_back(std::move(next));
    t.parent.push_back(std::move(par));
  }
  return t;
}

// uniform branching measure: mu(root) = 1, children split the parent equally
struct MeasureTree {
  std::vector<std::vector<Rational>> mu;  // aligned with DescTree layers
};

MeasureTree buildMeasure(const DescTree& t);

}  // namespace holderlab
