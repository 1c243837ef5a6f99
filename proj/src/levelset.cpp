#include "holderlab/levelset.hpp"

namespace holderlab {

MeasureTree buildMeasure(const DescTree& t) {
  MeasureTree m;
  m.mu.resize(t.layers());
  if (t.layers() == 0) return m;
  m.mu[0].assign(t.cells[0].size(), Rational(1));
  for (int k = 1; k < t.layers(); ++k) {
    const auto& par = t.parent[k];
    std::vector<std::uint32_t> fanout(t.cells[k - 1].size(), 0);
    for (std::int32_t p : par) ++fanout[static_cast<std::size_t>(p)];
    m.mu[k].resize(par.size());
    for (std::size_t j = 0; j < par.size(); ++j) {
      auto p = static_cast<std::size_t>(par[j]);
      m.mu[k][j] = m.mu[k - 1][p] / fanout[p];
    }
  }
  return m;
}

}  // namespace holderlab
