#include "holderlab/cross.hpp"

#include "holderlab/dyadic.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <unordered_map>

namespace holderlab {

// ---------------------------------------------------------------------------
// model

CrossModel::CrossModel(int m) : m_(m) {
  if (m < 2 || m > 12) throw std::invalid_argument("cross parameter m must be in [2, 12]");
  const int S = side();
  index_.assign(static_cast<std::size_t>(S) * S, -1);
  const int h = half();
  for (int i = 0; i < S; ++i) {
    for (int j = 0; j < S; ++j) {
      const bool onMidStrip = (i == h - 1 || i == h || j == h - 1 || j == h);
      const bool onBoundary = (i == 0 || i == S - 1 || j == 0 || j == S - 1);
      if (onMidStrip && !onBoundary) continue;
      index_[static_cast<std::size_t>(i) * S + j] = static_cast<int>(squares_.size());
      squares_.emplace_back(i, j);
    }
  }
  if (static_cast<std::int64_t>(squares_.size()) != pFormula(m))
    throw std::logic_error("retained-square count disagrees with the closed form");
}

std::int64_t CrossModel::pFormula(int m) {
  return (std::int64_t(1) << (2 * m)) - (std::int64_t(1) << (m + 2)) + 12;
}

bool CrossModel::retained(int i, int j) const { return indexOf(i, j) >= 0; }

int CrossModel::indexOf(int i, int j) const {
  const int S = side();
  if (i < 0 || i >= S || j < 0 || j >= S) return -1;
  return index_[static_cast<std::size_t>(i) * S + j];
}

bool CrossModel::connected() const {
  std::vector<int> comp(squares_.size());
  std::iota(comp.begin(), comp.end(), 0);
  auto find = [&](int x) {
    while (comp[x] != x) x = comp[x] = comp[comp[x]];
    return x;
  };
  for (std::size_t k = 0; k < squares_.size(); ++k) {
    auto [i, j] = squares_[k];
    for (auto [di, dj] : {std::pair{1, 0}, std::pair{0, 1}}) {
      int other = indexOf(i + di, j + dj);
      if (other >= 0) comp[find(static_cast<int>(k))] = find(other);
    }
  }
  int root = find(0);
  for (std::size_t k = 1; k < squares_.size(); ++k)
    if (find(static_cast<int>(k)) != root) return false;
  return true;
}

bool CrossModel::isCornerSquare(int i, int j) const {
  const int S = side();
  return (i == 0 || i == S - 1) && (j == 0 || j == S - 1);
}

bool CrossModel::isThin(int i, int j) const {
  if (!retained(i, j)) throw std::invalid_argument("isThin: omitted square");
  const int S = side();
  int colCount = 0, rowCount = 0;
  for (int t = 0; t < S; ++t) {
    colCount += retained(i, t);
    rowCount += retained(t, j);
  }
  return colCount == 2 || rowCount == 2;
}

int CrossModel::blockDepth(int i, int j) const {
  if (!retained(i, j)) throw std::invalid_argument("blockDepth: omitted square");
  const int h = half();
  if (i == h - 1 || i == h || j == h - 1 || j == h) return 0;  // thin
  const int B = h - 1;  // block side in squares
  const int a = i < h - 1 ? i : i - (h + 1);
  const int b = j < h - 1 ? j : j - (h + 1);
  return std::min(std::min(a, B - 1 - a), std::min(b, B - 1 - b)) + 1;
}

int CrossModel::typeOf(int i, int j, int L) const {
  if (L < 2) throw std::invalid_argument("scheme parameter L must be >= 2");
  if (!retained(i, j)) throw std::invalid_argument("typeOf: omitted square");
  if (isCornerSquare(i, j)) return 1;
  if (isThin(i, j)) return 2;
  const int S = side();
  for (auto [ci, cj] : {std::pair{0, 0}, std::pair{0, S - 1},
                        std::pair{S - 1, 0}, std::pair{S - 1, S - 1}}) {
    if (std::abs(i - ci) + std::abs(j - cj) == 1) return 2;
  }
  return 2 * blockDepth(i, j) >= L ? 4 : 3;
}

Rational CrossModel::kappaFactor(int type, int L) {
  switch (type) {
    case 1: return Rational(1);
    case 2: return Rational(1, 2);
    case 3: return Rational(1, 3);
    case 4: return Rational(1, L);
    default: throw std::invalid_argument("square type out of range");
  }
}

void CrossModel::writeJson(std::ostream& out) const {
  out << "{\"m\":" << m_ << ",\"p\":" << p() << ",\"squares\":[";
  for (std::size_t k = 0; k < squares_.size(); ++k) {
    if (k) out << ',';
    out << '[' << squares_[k].first << ',' << squares_[k].second << ']';
  }
  out << "]}\n";
}

CrossModel CrossModel::parseJson(std::istream& in) {
  nlohmann::json doc = nlohmann::json::parse(in);
  CrossModel model(doc.at("m").get<int>());
  if (doc.at("p").get<int>() != model.p())
    throw std::runtime_error("model file: square count disagrees with the generator");
  const auto& sq = doc.at("squares");
  if (sq.size() != model.squares_.size())
    throw std::runtime_error("model file: square list length mismatch");
  for (std::size_t k = 0; k < model.squares_.size(); ++k) {
    if (sq[k][0].get<int>() != model.squares_[k].first ||
        sq[k][1].get<int>() != model.squares_[k].second)
      throw std::runtime_error("model file: square list disagrees with the generator");
  }
  return model;
}

CrossTypeCounts crossTypeCounts(const CrossModel& model, int L) {
  CrossTypeCounts counts;
  for (auto [i, j] : model.squares()) {
    switch (model.typeOf(i, j, L)) {
      case 1: ++counts.t1; break;
      case 2: ++counts.t2; break;
      case 3: ++counts.t3; break;
      default: ++counts.t4; break;
    }
    counts.thin += model.isThin(i, j);
  }
  counts.aL = std::ldexp(double(counts.t3), -model.m());
  counts.bL = std::ldexp(double(counts.t4), -2 * model.m());
  return counts;
}

// ---------------------------------------------------------------------------
// complex

CrossComplex::CrossComplex(const CrossModel& model, int depth, std::size_t cellBudget)
    : m_(model.m()), depth_(depth), p_(model.p()) {
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  if (depth * m_ > 31) throw std::invalid_argument("depth * m exceeds the coordinate budget");
  std::size_t total = 1, levelCells = 1;
  for (int l = 1; l <= depth; ++l) {
    levelCells *= static_cast<std::size_t>(p_);
    total += levelCells;
    if (total > cellBudget) throw std::length_error("cross complex exceeds the cell budget");
  }

  std::unordered_map<std::uint64_t, std::uint32_t> intern;
  auto vertexId = [&](std::uint32_t x, std::uint32_t y) {
    std::uint64_t key = (std::uint64_t(x) << 32) | y;
    auto it = intern.find(key);
    if (it != intern.end()) return it->second;
    auto id = static_cast<std::uint32_t>(vertPos_.size());
    intern.emplace(key, id);
    vertPos_.emplace_back(x, y);
    return id;
  };

  cellVerts_.resize(depth + 1);
  const std::uint32_t W = std::uint32_t(1) << (depth * m_);
  cellVerts_[0].push_back({vertexId(0, 0), vertexId(W, 0), vertexId(0, W), vertexId(W, W)});
  for (int l = 0; l < depth; ++l) {
    const std::uint32_t wc = std::uint32_t(1) << ((depth - l - 1) * m_);
    cellVerts_[l + 1].reserve(cellVerts_[l].size() * p_);
    for (const auto& parent : cellVerts_[l]) {
      const auto [px, py] = vertPos_[parent[0]];
      for (const auto& [i, j] : model.squares()) {
        const std::uint32_t x = px + std::uint32_t(i) * wc;
        const std::uint32_t y = py + std::uint32_t(j) * wc;
        cellVerts_[l + 1].push_back({vertexId(x, y), vertexId(x + wc, y),
                                     vertexId(x, y + wc), vertexId(x + wc, y + wc)});
      }
    }
  }
}

std::vector<int> CrossComplex::cellDigits(int level, std::uint64_t idx) const {
  std::vector<int> digits(level);
  for (int t = level - 1; t >= 0; --t) {
    digits[t] = static_cast<int>(idx % p_);
    idx /= p_;
  }
  if (idx != 0) throw std::out_of_range("cell index out of range for its level");
  return digits;
}

Rational crossKappa(const CrossModel& model, const CrossComplex& cx, int L,
                    int level, std::uint64_t idx) {
  Rational kappa(1);
  for (int d : cx.cellDigits(level, idx)) {
    auto [i, j] = model.squares()[static_cast<std::size_t>(d)];
    kappa *= CrossModel::kappaFactor(model.typeOf(i, j, L), L);
  }
  return kappa;
}

// ---------------------------------------------------------------------------
// fields

VertexField<double> crossTestField(const CrossComplex& cx, CrossFieldKind kind,
                                   const CounterRng& rng, std::uint64_t counter) {
  const int bits = cx.scaleExp();
  if (bits > 20) throw std::invalid_argument("field grid too fine (depth*m > 20)");
  const std::uint32_t n = std::uint32_t(1) << bits;
  VertexField<double> f;
  f.values.resize(cx.vertexCount());

  if (kind == CrossFieldKind::PhiRamp) {
    const CounterRng stream = rng.stream(counter * 3 + 2);
    const double a = (stream.uniform01(0) < 0.5 ? -1 : 1) * (0.5 + 0.5 * stream.uniform01(1));
    const double b = stream.uniform01(2);
    // m is recoverable from the complex scale: bits = depth * m
    const int m = bits / cx.depth();
    std::vector<int> digits(cx.depth());
    for (std::uint32_t id = 0; id < cx.vertexCount(); ++id) {
      std::uint32_t x = cx.vertexScaled(id).first;
      double phi;
      if (x >= n) {
        phi = 1.0;  // right edge: all digits at the top of the range
      } else {
        for (int t = cx.depth() - 1; t >= 0; --t) {
          digits[t] = static_cast<int>(x & ((1u << m) - 1));
          x >>= m;
        }
        phi = crossPhiEval(m, digits).convert_to<double>();
      }
      f.values[id] = a * phi + b;
    }
    return f;
  }

  // strictly increasing ramp of one coordinate: random positive increments on
  // the finest grid, cumulated and normalized to [0, 1]
  const CounterRng stream = rng.stream(counter * 3 + (kind == CrossFieldKind::RampX ? 0 : 1));
  std::vector<double> g(n + 1);
  g[0] = 0;
  for (std::uint32_t t = 0; t < n; ++t)
    g[t + 1] = g[t] + 0.2 + stream.uniform01(t);
  const double total = g[n];
  for (auto& v : g) v /= total;
  for (std::uint32_t id = 0; id < cx.vertexCount(); ++id) {
    auto [x, y] = cx.vertexScaled(id);
    f.values[id] = g[kind == CrossFieldKind::RampX ? x : y];
  }
  return f;
}

double crossGuardedQuery(const CrossComplex& cx, const VertexField<double>& f,
                         const CounterRng& rng, std::uint64_t counter,
                         double guard, int maxTries) {
  (void)cx;
  double lo = f.values[0], hi = lo;
  for (double v : f.values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(hi - lo > 4 * guard))
    throw std::domain_error("crossGuardedQuery: field range too small for the guard");
  std::vector<double> sorted(f.values);
  std::sort(sorted.begin(), sorted.end());
  for (int t = 0; t < maxTries; ++t) {
    double r = lo + guard + (hi - lo - 2 * guard) * rng.uniform01(counter * 65537u + t);
    auto it = std::lower_bound(sorted.begin(), sorted.end(), r);
    double gap = std::numeric_limits<double>::infinity();
    if (it != sorted.end()) gap = *it - r;
    if (it != sorted.begin()) gap = std::min(gap, r - *(it - 1));
    if (gap >= guard) return r;
  }
  throw std::runtime_error("crossGuardedQuery: no guarded value found");
}

CrossConductivityReport crossConductivityAudit(const CrossModel& model,
                                               const CrossComplex& cx,
                                               const VertexField<double>& f,
                                               double r, int L) {
  CrossConductivityReport rep;
  rep.minSlack = std::numeric_limits<double>::infinity();
  for (int level = 0; level < cx.depth(); ++level) {
    std::vector<std::uint64_t> front = buildFront(cx, f, level, r);
    for (std::uint64_t q : front) {
      ++rep.parentsChecked;
      const Rational kappaQ = crossKappa(model, cx, L, level, q);
      DescTree tree;
      try {
        tree = descend(cx, f, r, level, q, cx.depth() - level);
      } catch (const std::domain_error&) {
        // an empty descendant layer is itself a violation of the inequality
        rep.violations += static_cast<std::size_t>(cx.depth() - level);
        rep.comparisons += static_cast<std::size_t>(cx.depth() - level);
        rep.minSlack = std::min(rep.minSlack, -kappaQ.convert_to<double>());
        continue;
      }
      for (int k = 1; k < tree.layers(); ++k) {
        Rational sum(0);
        for (std::uint64_t c : tree.cells[k])
          sum += crossKappa(model, cx, L, level + k, c);
        ++rep.comparisons;
        if (sum < kappaQ) ++rep.violations;
        rep.minSlack = std::min(rep.minSlack, Rational(sum - kappaQ).convert_to<double>());
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// phi

Rational crossPhiEval(int m, const std::vector<int>& digits) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  const int h = 1 << (m - 1);
  Rational value(0);
  Rational weight(1, 2);
  for (int d : digits) {
    if (d < 0 || d >= (1 << m)) throw std::invalid_argument("digit out of range");
    if (d == h - 1 || d == h) {
      if (d == h) value += weight;
      weight /= 2;
      continue;
    }
    // off-alphabet digit: the point sits in a gap (or beyond the alphabet
    // set); the continuous monotone extension is constant there, equal to the
    // nearest alphabet value below: 0 more when under the gap, the whole
    // remaining tail sup (digit h forever, 2^{1-j}) when above it
    if (d > h) value += 2 * weight;
    break;
  }
  return value;
}

double crossPhiHolderBound(int m) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  const double q = std::ldexp(1.0, m);  // 2^m
  return 2.0 * std::pow((q - 1) / (q - 2), 1.0 / m);
}

CrossPhiSampleReport crossPhiHolderSample(int m, int depthDigits,
                                          std::size_t pairs, std::uint64_t seed) {
  if (depthDigits < 2 || depthDigits * m > 60)
    throw std::invalid_argument("depthDigits out of range");
  CounterRng rng(seed);
  const int h = 1 << (m - 1);
  const BigInt den = BigInt(1) << (m * depthDigits);

  auto draw = [&](std::uint64_t c, bool alphabetOnly) {
    std::vector<int> digits(depthDigits);
    for (int t = 0; t < depthDigits; ++t) {
      double u = rng.uniform01(c * 131 + t);
      digits[t] = alphabetOnly ? (u < 0.5 ? h - 1 : h)
                               : static_cast<int>(u * (1 << m)) % (1 << m);
    }
    BigInt x = 0;
    for (int d : digits) x = (x << m) + d;
    return std::pair<Rational, Rational>(Rational(x, den), crossPhiEval(m, digits));
  };

  CrossPhiSampleReport rep;
  rep.bound = crossPhiHolderBound(m);
  const double invM = 1.0 / m;
  for (std::size_t t = 0; t < pairs; ++t) {
    bool alphabetOnly = (t % 2) == 0;  // half the pairs stress the tight family
    auto [x1, p1] = draw(2 * t, alphabetOnly);
    auto [x2, p2] = draw(2 * t + 1, alphabetOnly);
    if (x1 == x2) continue;
    ++rep.pairs;
    const double dx = std::abs(Rational(x1 - x2).convert_to<double>());
    const double dp = std::abs(Rational(p1 - p2).convert_to<double>());
    const double ratio = dp / std::pow(dx, invM);
    if (ratio > rep.maxRatio) rep.maxRatio = ratio;
  }
  rep.pass = rep.maxRatio <= rep.bound * (1 + 1e-12);
  return rep;
}

SectionCountReport levelSectionCount(const CrossModel& model,
                                     const std::vector<int>& bits, int n) {
  if (n < 1 || n > 24) throw std::invalid_argument("section level out of range");
  if (static_cast<int>(bits.size()) < n)
    throw std::invalid_argument("need one bit per level");
  const int h = model.half();
  SectionCountReport rep;
  // walk the retained tree keeping only squares whose column matches the
  // digit of x_r at that level; the line is interior to the chosen column,
  // so it meets exactly the retained squares of that column
  std::uint64_t frontier = 1;
  for (int l = 0; l < n; ++l) {
    if (bits[l] != 0 && bits[l] != 1)
      throw std::invalid_argument("bits must be 0/1");
    const int col = h - 1 + bits[l];
    std::uint64_t perSquare = 0;
    for (int j = 0; j < model.side(); ++j) perSquare += model.retained(col, j);
    frontier *= perSquare;
    rep.counts.push_back(frontier);
  }
  rep.slope = std::log2(double(rep.counts.back())) / (double(n) * model.m());
  return rep;
}

// ---------------------------------------------------------------------------
// standard piecewise-affine approximation

CrossApproxReport piecewiseAffineApprox(const CrossModel& model,
                                        const CrossComplex& cx,
                                        const VertexField<double>& f, int n,
                                        double lipConstM) {
  if (n + 1 != cx.depth())
    throw std::invalid_argument("complex must be sampled exactly one level below n");
  if (f.values.size() != cx.vertexCount())
    throw std::invalid_argument("field does not match the complex");
  const int h = model.half();

  CrossApproxReport rep;
  rep.lipBound = std::ldexp(lipConstM, model.m() - 1);
  rep.approx.values.assign(cx.vertexCount(), std::numeric_limits<double>::quiet_NaN());

  auto assign = [&](std::uint32_t id, double v) {
    double& slot = rep.approx.values[id];
    if (std::isnan(slot)) {
      slot = v;
    } else if (slot != v) {
      throw std::logic_error("approximation assigns conflicting vertex values");
    }
  };

  const int p = cx.branching();
  for (std::uint64_t q = 0; q < cx.cellCount(n); ++q) {
    const std::uint32_t* pv = cx.cellVertices(n, q);
    const double corner[2][2] = {{f[pv[0]], f[pv[2]]},   // [qx][qy]: 00, 01
                                 {f[pv[1]], f[pv[3]]}};  //          10, 11
    const auto [qx0, qy0] = cx.vertexScaled(pv[0]);
    const std::uint32_t wc = cx.cellWidthScaled(n + 1);
    for (int c = 0; c < p; ++c) {
      const auto [i, j] = model.squares()[static_cast<std::size_t>(c)];
      const std::uint64_t child = q * p + c;
      const std::uint32_t* cv = cx.cellVertices(n + 1, child);
      const bool colThin = (i == h - 1 || i == h);
      const bool rowThin = (j == h - 1 || j == h);
      if (!colThin && !rowThin) {
        // thick block: freeze the value of the parent corner it touches
        const int qx = i < h - 1 ? 0 : 1, qy = j < h - 1 ? 0 : 1;
        for (int t = 0; t < 4; ++t) assign(cv[t], corner[qx][qy]);
      } else if (colThin) {
        // vertical corridor at the bottom (j == 0) or top: interpolate in x
        const int qy = j == 0 ? 0 : 1;
        const double span = 2.0 * wc;
        for (int t = 0; t < 4; ++t) {
          const double lam = (double(cx.vertexScaled(cv[t]).first) -
                              (double(qx0) + double(h - 1) * wc)) / span;
          assign(cv[t], (1 - lam) * corner[0][qy] + lam * corner[1][qy]);
        }
      } else {
        const int qx = i == 0 ? 0 : 1;
        const double span = 2.0 * wc;
        for (int t = 0; t < 4; ++t) {
          const double lam = (double(cx.vertexScaled(cv[t]).second) -
                              (double(qy0) + double(h - 1) * wc)) / span;
          assign(cv[t], (1 - lam) * corner[qx][0] + lam * corner[qx][1]);
        }
      }
    }
  }

  for (double v : rep.approx.values)
    if (std::isnan(v)) throw std::logic_error("approximation left a vertex unset");

  // audits: anchors, per-cell one-coordinate affinity, sampled Lipschitz
  for (std::uint64_t q = 0; q < cx.cellCount(n); ++q) {
    const std::uint32_t* pv = cx.cellVertices(n, q);
    for (int t = 0; t < 4; ++t)
      if (rep.approx[pv[t]] != f[pv[t]]) rep.anchorsOk = false;
  }
  const double edge = std::ldexp(double(cx.cellWidthScaled(n + 1)), -cx.scaleExp());
  for (std::uint64_t c = 0; c < cx.cellCount(n + 1); ++c) {
    const std::uint32_t* cv = cx.cellVertices(n + 1, c);
    const double v00 = rep.approx[cv[0]], v10 = rep.approx[cv[1]];
    const double v01 = rep.approx[cv[2]], v11 = rep.approx[cv[3]];
    const bool xAffine = v00 == v01 && v10 == v11;  // depends on x only
    const bool yAffine = v00 == v10 && v01 == v11;  // depends on y only
    if (!xAffine && !yAffine) rep.standardOk = false;
    for (auto [a, b] : {std::pair{v00, v10}, std::pair{v01, v11},
                        std::pair{v00, v01}, std::pair{v10, v11}}) {
      rep.sampledLip = std::max(rep.sampledLip, std::abs(a - b) / edge);
    }
  }
  rep.lipOk = rep.sampledLip <= rep.lipBound * (1 + 1e-12);
  return rep;
}

// ---------------------------------------------------------------------------
// phase transition

TransitionRecord transitionBounds(int m, int L, double alpha) {
  if (m < 2) throw std::invalid_argument("m must be >= 2");
  if (L < 2) throw std::invalid_argument("L must be >= 2");
  if (!(alpha > 0) || !(alpha <= 1))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  const double ln2 = std::log(2.0), ln3 = std::log(3.0), ln4 = std::log(4.0);
  const double lnL = std::log(double(L));
  TransitionRecord rec;
  rec.m = m;
  rec.L = L;
  rec.alpha = alpha;
  rec.smallAlphaDim = 1.0 / m;
  const double g = ln2 / ln3 - ln4 / lnL;
  rec.feasible = g > 0;
  rec.alpha1 = (ln3 * ln4) / (ln2 * lnL);
  if (!rec.feasible) return rec;
  rec.betaHigh = ln3 / ln2;
  rec.betaLow = std::max(1.0, (1.0 - alpha) / g);
  rec.rangeNonempty = rec.betaLow < rec.betaHigh && alpha > rec.alpha1;
  if (rec.rangeNonempty) rec.dStarLower = rec.betaHigh / m;
  return rec;
}

double feasibilityThresholdL() {
  const double ln2 = std::log(2.0), ln3 = std::log(3.0), ln4 = std::log(4.0);
  auto g = [&](double L) { return ln2 / ln3 - ln4 / std::log(L); };
  double lo = 4.0, hi = 100.0;
  if (!(g(lo) < 0) || !(g(hi) > 0))
    throw std::logic_error("feasibility bracket endpoints have unexpected signs");
  for (int it = 0; it < 200; ++it) {
    double mid = 0.5 * (lo + hi);
    (g(mid) > 0 ? hi : lo) = mid;
  }
  return 0.5 * (lo + hi);
}

double crossCExponent(int m, int L, double alpha, double beta, double eps,
                      double aL, double K) {
  if (m < 2 || L < 2) throw std::invalid_argument("m, L out of range");
  if (!(aL > 0) || !(K >= 0) || !(eps >= 0))
    throw std::invalid_argument("aL must be positive, K and eps nonnegative");
  const double ln2 = std::log(2.0);
  const double q3 = ln2 / std::log(3.0);
  const double qL = ln2 / std::log(double(L));
  if (!(beta * q3 < 1) || !(beta > 0) || !(beta - eps >= 0))
    throw std::domain_error("beta outside the admissible range");
  const double lnc = -m * alpha * ln2
                   + (1 - std::log(1 - beta * q3))
                   + (1 - (beta - eps) * q3) * std::log(aL * std::ldexp(1.0, m))
                   + (1 - std::log(beta * qL))
                   + (beta + eps) * qL * (2.0 * m * ln2)
                   + std::log(K + 4.0);
  return std::exp(lnc);
}

}  // namespace holderlab
