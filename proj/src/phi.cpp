#include "holderlab/phi.hpp"

#include "holderlab/curves.hpp"
#include "holderlab/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <stdexcept>
#include <unordered_set>

namespace holderlab {

namespace {

const Point kA{Dyadic(0), Dyadic(0)};
const Point kB{Dyadic(1), Dyadic(0)};
const Point kC{Dyadic(0), Dyadic(1)};

int zerosParity(const DigitString& s) {
  int z = 0;
  for (char ch : s) z ^= (ch == '0');
  return z;
}

void requireDigits(const DigitString& s, const char* allowed, const char* what) {
  for (char ch : s) {
    if (!std::strchr(allowed, ch))
      throw std::invalid_argument(std::string(what) + ": unexpected digit '" +
                                  std::string(1, ch) + "'");
  }
}

}  // namespace

// ---------------------------------------------------------------------------
// generator system

const GenSystem& GenSystem::get() {
  static const GenSystem g;
  return g;
}

const GenMap& GenSystem::at(int digit, int branch) const {
  if (digit < 0 || digit > 3 || branch < 1 || branch > 2)
    throw std::invalid_argument("generator index out of range");
  return maps_[digit][branch - 1];
}

namespace {

// locate the subdivision cell whose corner set equals the map image of the
// root triangle, and read off the corner relabeling
void deriveCell(GenMap& gm, int level) {
  const std::array<Point, 3> img = {gm.map.apply(kA), gm.map.apply(kB),
                                    gm.map.apply(kC)};
  std::uint64_t cells = 1;
  for (int i = 0; i < level; ++i) cells *= 3;
  for (std::uint64_t idx = 0; idx < cells; ++idx) {
    TriAddress addr = TriAddress::fromLevelIndex(level, idx);
    std::array<Point, 3> corners = realizeCorners(addr);
    std::array<int, 3> perm{-1, -1, -1};
    bool ok = true;
    for (int j = 0; j < 3 && ok; ++j) {
      perm[j] = -1;
      for (int c = 0; c < 3; ++c) {
        if (corners[c] == img[j]) {
          perm[j] = c;
          break;
        }
      }
      ok = perm[j] >= 0;
    }
    if (!ok) continue;
    gm.suffix.clear();
    for (int i = 0; i < level; ++i) gm.suffix.push_back(addr.digit(i));
    gm.perm = perm;
    return;
  }
  throw std::logic_error("generator image is not a subdivision cell");
}

}  // namespace

GenSystem::GenSystem() {
  const Dyadic half(1, 1), quarter(1, 2), zero(0);

  auto scaled = [&](const Dyadic& rho, const Dyadic& tu, const Dyadic& tv) {
    Affine m = Affine::scaling(rho);
    m.tu = tu;
    m.tv = tv;
    return m;
  };

  // digit 3: half-scale copy anchored at the origin corner
  maps_[3][0].map = scaled(half, zero, zero);
  maps_[3][1].map = maps_[3][0].map;

  // digit 2: quarter copies anchored at the two side midpoints next to A
  maps_[2][0].map = scaled(quarter, half, zero);
  maps_[2][1].map = scaled(quarter, zero, half);

  // digit 1: quarter copies anchored at the far-side midpoint
  maps_[1][0].map = scaled(quarter, half, quarter);
  maps_[1][1].map = scaled(quarter, quarter, half);

  // digit 0: quarter copies rotated onto corners B and C
  maps_[0][0].map =
      solveDirectSimilarity(kA, kB, kC, Point{Dyadic(3, 2), zero}, quarter);
  maps_[0][1].map =
      solveDirectSimilarity(kA, kC, kB, Point{zero, Dyadic(3, 2)}, quarter);

  for (int digit = 0; digit <= 3; ++digit) {
    for (int br = 0; br < 2; ++br) {
      deriveCell(maps_[digit][br], digit == 3 ? 1 : 2);
    }
  }
}

// ---------------------------------------------------------------------------
// geometric order

SideSegments sideSegments(const DigitString& iota) {
  requireDigits(iota, "023", "sideSegments");
  const GenSystem& G = GenSystem::get();
  SideSegments seg{Segment{kA, kB}, Segment{kA, kC}};
  for (std::size_t i = iota.size(); i-- > 0;) {
    switch (iota[i]) {
      case '3':
        seg = {G.at(3, 1).map.apply(seg.ab), G.at(3, 1).map.apply(seg.ac)};
        break;
      case '2':
        seg = {G.at(2, 1).map.apply(seg.ab), G.at(2, 2).map.apply(seg.ac)};
        break;
      case '0': {
        Segment ab = G.at(0, 1).map.apply(seg.ac);
        Segment ac = G.at(0, 2).map.apply(seg.ab);
        seg = {ab, ac};
        break;
      }
      default:
        throw std::invalid_argument("sideSegments: digit out of range");
    }
  }
  return seg;
}

Dyadic abMidKey(const DigitString& iota) {
  return abOrderKey(sideSegments(iota).ab.mid());
}

int compareLt4(const DigitString& a, const DigitString& b) {
  if (a.size() != b.size())
    throw std::invalid_argument("compareLt4 requires equal-length strings");
  Dyadic ka = abMidKey(a), kb = abMidKey(b);
  if (ka < kb) return -1;
  if (kb < ka) return 1;
  return 0;
}

// ---------------------------------------------------------------------------
// cylinder constituents

std::vector<Constituent> deltaIota(const DigitString& iota) {
  requireDigits(iota, "0123", "deltaIota");
  struct State {
    Affine map;
    TriAddress addr;
    std::array<int, 3> perm;
  };
  std::vector<State> states{{Affine::identity(), TriAddress(), {0, 1, 2}}};
  const GenSystem& G = GenSystem::get();
  for (char ch : iota) {
    int digit = ch - '0';
    int branches = digit == 3 ? 1 : 2;
    std::vector<State> next;
    next.reserve(states.size() * branches);
    for (const State& st : states) {
      for (int br = 1; br <= branches; ++br) {
        const GenMap& gm = G.at(digit, br);
        State ns = st;
        ns.map = st.map.compose(gm.map);
        for (int s : gm.suffix) {
          if (ns.addr.len >= TriAddress::kMaxLen)
            throw std::invalid_argument("deltaIota: address depth exceeds 31");
          ns.addr = ns.addr.child(st.perm[s]);
        }
        for (int j = 0; j < 3; ++j) ns.perm[j] = st.perm[gm.perm[j]];
        next.push_back(std::move(ns));
      }
    }
    states = std::move(next);
  }
  std::vector<Constituent> out;
  out.reserve(states.size());
  for (const State& st : states) out.push_back({st.map, st.addr});
  return out;
}

// ---------------------------------------------------------------------------
// admissible blocks

BigInt admissibleCount(int kstar, int w) {
  if (kstar < 1 || w < 0) throw std::invalid_argument("admissibleCount: bad parameters");
  BigInt total = 0;
  for (int j = 0; j <= std::min(w, kstar); ++j)
    total += binomial(kstar, j) << j;
  return total;
}

double log2BigInt(const BigInt& x) {
  if (x <= 0) throw std::domain_error("log2BigInt needs a positive value");
  unsigned msb = boost::multiprecision::msb(x);
  if (msb <= 52) return std::log2(x.convert_to<double>());
  BigInt top = x >> (msb - 52);
  return double(msb - 52) + std::log2(top.convert_to<double>());
}

PhiWitness::PhiWitness(int kstar, int w, std::size_t enumCap)
    : kstar_(kstar), w_(w) {
  if (kstar_ < 1 || w_ < 1)
    throw std::invalid_argument("witness parameters must satisfy kstar >= 1, w >= 1");
  w_ = std::min(w_, kstar_);
  count_ = admissibleCount(kstar_, w_);
  if (count_ > BigInt(enumCap))
    throw std::length_error("admissible block family too large to enumerate");
  buildTables();
  validateOrderTables();
}

void PhiWitness::buildTables() {
  std::vector<DigitString> blocks;
  DigitString cur(static_cast<std::size_t>(kstar_), '3');
  // enumerate strings over {0,2,3} with at most w_ non-3 digits
  auto rec = [&](auto&& self, int pos, int non3) -> void {
    if (pos == kstar_) {
      blocks.push_back(cur);
      return;
    }
    cur[pos] = '3';
    self(self, pos + 1, non3);
    if (non3 < w_) {
      for (char ch : {'0', '2'}) {
        cur[pos] = ch;
        self(self, pos + 1, non3 + 1);
      }
      cur[pos] = '3';
    }
  };
  rec(rec, 0, 0);
  if (BigInt(blocks.size()) != count_)
    throw std::logic_error("block enumeration does not match the closed-form count");

  auto buildSorted = [&](const DigitString& ctx, std::vector<DigitString>& sorted,
                         std::vector<Dyadic>& keys,
                         std::unordered_map<DigitString, int>& index) {
    std::vector<std::pair<Dyadic, std::size_t>> order;
    order.reserve(blocks.size());
    for (std::size_t i = 0; i < blocks.size(); ++i)
      order.emplace_back(abMidKey(ctx + blocks[i]), i);
    std::sort(order.begin(), order.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    sorted.clear();
    keys.clear();
    index.clear();
    for (std::size_t r = 0; r < order.size(); ++r) {
      sorted.push_back(blocks[order[r].second]);
      keys.push_back(order[r].first);
      index.emplace(sorted.back(), static_cast<int>(r));
    }
  };
  buildSorted("", sortedEven_, keysEven_, idxEven_);
  buildSorted("0", sortedOdd_, keysOdd_, idxOdd_);
}

void PhiWitness::validateOrderTables() const {
  // the odd-parity order must be the reversed even-parity order
  const std::size_t n = sortedEven_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (sortedEven_[i] != sortedOdd_[n - 1 - i])
      throw std::logic_error("odd-parity block order is not the reversed even order");
  }
  // order must depend on the context only through its 0-digit parity; check
  // an evenly strided subsample under several contexts of both parities
  const DigitString contexts[] = {"3",  "22", "00",  "0230",
                                  "03", "30", "203", "000"};
  const std::size_t stride = std::max<std::size_t>(1, n / 400);
  for (const DigitString& ctx : contexts) {
    const auto& expect = sorted(zerosParity(ctx));
    bool hasPrev = false;
    Dyadic prev(0);
    for (std::size_t i = 0; i < n; i += stride) {
      Dyadic key = abMidKey(ctx + expect[i]);
      if (hasPrev && !(prev < key))
        throw std::logic_error("block order depends on context beyond 0-parity");
      prev = key;
      hasPrev = true;
    }
  }
}

bool PhiWitness::isAdmissible(const DigitString& block) const {
  return idxEven_.count(block) != 0;
}

BigInt PhiWitness::lessCount(int parity, const DigitString& block) const {
  if (static_cast<int>(block.size()) != kstar_)
    throw std::invalid_argument("lessCount: block length must equal kstar");
  requireDigits(block, "023", "lessCount");
  const auto& index = parity ? idxOdd_ : idxEven_;
  auto it = index.find(block);
  if (it != index.end()) return BigInt(it->second);
  const auto& keys = parity ? keysOdd_ : keysEven_;
  Dyadic key = abMidKey(parity ? "0" + block : block);
  auto pos = std::lower_bound(keys.begin(), keys.end(), key);
  return BigInt(pos - keys.begin());
}

BigInt PhiWitness::rankCount(const std::vector<DigitString>& blocks) const {
  BigInt rank = 0;
  int z = 0;
  for (std::size_t j = 0; j < blocks.size(); ++j) {
    rank *= count_;
    rank += lessCount(z, blocks[j]);
    if (!isAdmissible(blocks[j])) {
      // ties cannot continue past a non-admissible block: the remaining
      // positions contribute a full factor each
      for (std::size_t t = j + 1; t < blocks.size(); ++t) rank *= count_;
      break;
    }
    z ^= zerosParity(blocks[j]);
  }
  return rank;
}

std::string PhiWitness::Interval::str() const {
  return "[" + rank.str() + "/" + den.str() + ", " + BigInt(rank + 1).str() +
         "/" + den.str() + "]";
}

PhiWitness::Interval PhiWitness::eval(const std::vector<DigitString>& blocks) const {
  Interval out;
  out.rank = rankCount(blocks);
  out.blocks = static_cast<int>(blocks.size());
  out.den = 1;
  for (int i = 0; i < out.blocks; ++i) out.den *= count_;
  return out;
}

Rational PhiWitness::phiOfChain(const DigitString& head) const {
  requireDigits(head, "023", "phiOfChain");
  const std::size_t J = (head.size() + kstar_ - 1) / kstar_;
  DigitString padded = head;
  padded.resize(J * kstar_, '3');
  BigInt num = 0;
  int z = 0;
  for (std::size_t j = 0; j < J; ++j) {
    DigitString block = padded.substr(j * kstar_, kstar_);
    num = num * count_ + lessCount(z, block);
    if (!isAdmissible(block)) {
      // the chain value is exactly the accumulated prefix rank
      BigInt den = 1;
      for (std::size_t t = 0; t <= j; ++t) den *= count_;
      return Rational(num, den);
    }
    z ^= zerosParity(block);
  }
  const DigitString all3(static_cast<std::size_t>(kstar_), '3');
  BigInt cInf = lessCount(z, all3);
  BigInt den = 1;
  for (std::size_t t = 0; t < J; ++t) den *= count_;
  return Rational(num * (count_ - 1) + cInf, den * (count_ - 1));
}

Rational PhiWitness::extendConstant(const DigitString& prefix) const {
  DigitString p = prefix;
  if (!p.empty() && p.back() == '1') p.pop_back();
  requireDigits(p, "023", "extendConstant");
  // the two digit cylinders flanking the digit-1 cylinder meet in one point;
  // its value is the shared limit of their extreme chains
  Rational viaZero = phiOfChain(p + "00");
  Rational viaTwo = phiOfChain(p + "20");
  if (viaZero != viaTwo)
    throw std::logic_error("extendConstant: flanking chain limits disagree");
  return viaZero;
}

// ---------------------------------------------------------------------------
// vertex cloud and audits

namespace {

std::int64_t scaledCoord(const Dyadic& d, int scaleExp) {
  std::int64_t shift = scaleExp - d.exp();
  if (shift < 0) throw std::logic_error("vertex coordinate finer than scale");
  BigInt v = d.num() << shift;
  return v.convert_to<std::int64_t>();
}

}  // namespace

PhiVertexSet phiVertexSet(const PhiWitness& wit, int depthBlocks) {
  if (depthBlocks < 1) throw std::invalid_argument("depthBlocks must be >= 1");
  const int span = wit.kstar() + wit.w();
  if (depthBlocks * span > TriAddress::kMaxLen)
    throw std::invalid_argument("vertex cloud depth exceeds the address budget");

  PhiVertexSet out;
  out.scaleExp = depthBlocks * span;
  std::unordered_map<std::uint64_t, std::size_t> seen;
  std::unordered_map<DigitString, Rational> phiMemo;
  auto phiOf = [&](const DigitString& head) -> const Rational& {
    auto it = phiMemo.find(head);
    if (it == phiMemo.end())
      it = phiMemo.emplace(head, wit.phiOfChain(head)).first;
    return it->second;
  };

  auto record = [&](const Point& pt, const Rational& value) {
    std::int64_t us = scaledCoord(pt.u, out.scaleExp);
    std::int64_t vs = scaledCoord(pt.v, out.scaleExp);
    std::uint64_t key = (static_cast<std::uint64_t>(us) << 32) |
                        static_cast<std::uint64_t>(vs);
    auto it = seen.find(key);
    if (it != seen.end()) {
      if (out.values[it->second] != value)
        throw std::logic_error("phi disagrees between address aliases of a vertex");
      return;
    }
    seen.emplace(key, out.us.size());
    out.us.push_back(us);
    out.vs.push_back(vs);
    out.values.push_back(value);
  };

  const GenSystem& G = GenSystem::get();

  // expand one admissible block below `base`, recording the corner triples of
  // every constituent triangle, then recurse to the next block depth
  auto walk = [&](auto&& self, const Affine& base, const DigitString& head,
                  int depth) -> void {
    for (const DigitString& block : wit.sorted(0)) {
      DigitString nhead = head + block;
      const Rational& phiA = phiOf(nhead);
      const Rational& phiBC = phiOf(nhead + "0");
      std::vector<Affine> maps{base};
      int levels = 0;
      for (char ch : block) {
        int digit = ch - '0';
        int branches = digit == 3 ? 1 : 2;
        levels += G.levelGain(digit);
        std::vector<Affine> next;
        next.reserve(maps.size() * branches);
        for (const Affine& m : maps)
          for (int br = 1; br <= branches; ++br)
            next.push_back(m.compose(G.at(digit, br).map));
        maps = std::move(next);
      }
      if (levels > span)  // per-block level gain is at most kstar + w
        throw std::logic_error("constituent deeper than the block level bound");
      for (const Affine& m : maps) {
        record(m.apply(kA), phiA);
        record(m.apply(kB), phiBC);
        record(m.apply(kC), phiBC);
      }
      if (depth + 1 < depthBlocks)
        for (const Affine& m : maps) self(self, m, nhead, depth + 1);
    }
  };
  walk(walk, Affine::identity(), "", 0);
  return out;
}

PhiHolderReport phiHolderAudit(const PhiWitness& wit, double alpha,
                               int depthBlocks) {
  if (!(alpha > 0) || !(alpha <= 1))
    throw std::invalid_argument("alpha must lie in (0, 1]");
  // the witness is alpha-Holder only when N >= 2^((kstar+w) alpha); a larger
  // alpha makes the claimed bound meaningless, so refuse to certify it
  const double alphaCap = log2BigInt(wit.count()) / (wit.kstar() + wit.w());
  if (alpha > alphaCap * (1 + 1e-12))
    throw std::domain_error(
        "alpha " + std::to_string(alpha) + " exceeds log2(N)/(kstar+w) = " +
        std::to_string(alphaCap) + " for kstar=" + std::to_string(wit.kstar()) +
        " w=" + std::to_string(wit.w()) + "; witness cannot be Holder there");
  PhiVertexSet vs = phiVertexSet(wit, depthBlocks);
  const std::size_t n = vs.us.size();
  std::vector<double> val(n);
  for (std::size_t i = 0; i < n; ++i)
    val[i] = vs.values[i].convert_to<double>();

  const double inv2sq = std::ldexp(1.0, -2 * vs.scaleExp);
  // lower bounds 2^(alpha e) for the squared-distance exponent prefilter
  std::vector<double> pow2a(2 * vs.scaleExp + 3);
  for (std::size_t e = 0; e < pow2a.size(); ++e)
    pow2a[e] = std::exp2(alpha * (double(e) - 2 * vs.scaleExp));

  double bestSq = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const std::int64_t ui = vs.us[i], vi = vs.vs[i];
    const double fi = val[i];
    for (std::size_t j = i + 1; j < n; ++j) {
      const std::int64_t du = ui - vs.us[j], dv = vi - vs.vs[j];
      const std::int64_t d2 = du * du + du * dv + dv * dv;
      const double df = fi - val[j];
      const double df2 = df * df;
      const int e = 63 - __builtin_clzll(static_cast<std::uint64_t>(d2));
      if (df2 <= bestSq * pow2a[e]) continue;
      const double ratioSq = df2 / std::pow(double(d2) * inv2sq, alpha);
      if (ratioSq > bestSq) bestSq = ratioSq;
    }
  }

  PhiHolderReport rep;
  rep.vertices = n;
  rep.maxRatio = std::sqrt(bestSq);
  rep.bound = std::pow(6.0 * wit.count().convert_to<double>() / std::sqrt(3.0),
                       alpha);
  rep.pass = rep.maxRatio <= rep.bound * (1 + 1e-12);
  return rep;
}

LevelCellReport phiLevelCellCount(const PhiWitness& wit,
                                  const std::vector<DigitString>& chain, int n) {
  if (n < 1) throw std::invalid_argument("level index must be >= 1");
  const int span = wit.kstar() + wit.w();
  const int target = n * span;
  if (target > TriAddress::kMaxLen)
    throw std::invalid_argument("level-cell depth exceeds the address budget");
  const std::size_t needBlocks =
      (static_cast<std::size_t>(target) + wit.kstar() - 1) / wit.kstar();
  if (chain.size() < needBlocks)
    throw std::invalid_argument("chain too short for the requested level");

  DigitString digits;
  for (std::size_t j = 0; j < needBlocks; ++j) {
    if (!wit.isAdmissible(chain[j]))
      throw std::invalid_argument("chain blocks must be admissible");
    digits += chain[j];
  }

  struct State {
    TriAddress addr;
    std::array<int, 3> perm;
  };
  const GenSystem& G = GenSystem::get();
  std::vector<State> frontier{{TriAddress(), {0, 1, 2}}};
  std::unordered_set<std::uint64_t> prefixes;
  auto pack = [](const TriAddress& a) {
    return (a.bits << 5) | static_cast<std::uint64_t>(a.len);
  };
  for (char ch : digits) {
    if (frontier.empty()) break;
    int digit = ch - '0';
    int branches = digit == 3 ? 1 : 2;
    std::vector<State> next;
    for (const State& st : frontier) {
      for (int br = 1; br <= branches; ++br) {
        const GenMap& gm = G.at(digit, br);
        State ns = st;
        for (int s : gm.suffix) ns.addr = ns.addr.child(st.perm[s]);
        for (int j = 0; j < 3; ++j) ns.perm[j] = st.perm[gm.perm[j]];
        if (ns.addr.len >= target) {
          prefixes.insert(pack(ns.addr.prefix(target)));
        } else {
          next.push_back(ns);
        }
      }
    }
    frontier = std::move(next);
  }
  if (!frontier.empty())
    throw std::logic_error("chain digits exhausted before the target level");

  LevelCellReport rep;
  rep.n = n;
  rep.cells = prefixes.size();
  rep.bound = BigInt(1) << (static_cast<unsigned>(n) * wit.w());
  rep.chain.assign(chain.begin(), chain.begin() + needBlocks);
  return rep;
}

std::vector<DigitString> chainFromRankDigits(const PhiWitness& wit,
                                             const std::vector<int>& digits) {
  std::vector<DigitString> chain;
  chain.reserve(digits.size());
  int z = 0;
  for (int d : digits) {
    if (d < 0 || BigInt(d) >= wit.count())
      throw std::invalid_argument("rank digit out of range");
    const DigitString& block = wit.sorted(z)[static_cast<std::size_t>(d)];
    chain.push_back(block);
    z ^= zerosParity(block);
  }
  return chain;
}

// ---------------------------------------------------------------------------
// parameter selection

OptimizedParams optimizeParams(double alpha, double eps) {
  if (!(alpha > 0) || !(alpha < 1))
    throw std::domain_error("alpha must lie in (0, 1)");
  if (!(eps > 0)) throw std::domain_error("eps must be positive");

  const double tTarget = invertH(BoundKind::Upper, alpha);
  const double budget = tTarget / (1 + tTarget) + eps;

  double epsPrime = eps / 2;
  for (int round = 0; round < 12; ++round, epsPrime /= 2) {
    const double aim = std::min(alpha + epsPrime, 1.0 - 1e-12);
    const double t0 = invertH(BoundKind::Upper, aim);
    for (int kstar = 1; kstar <= 4096; ++kstar) {
      const int w = static_cast<int>(std::floor(kstar * t0)) + 1;
      if (w > kstar) continue;
      const double ratio = double(w) / double(kstar + w);
      if (ratio > budget + 1e-15) continue;
      BigInt count = admissibleCount(kstar, w);
      if (log2BigInt(count) < (kstar + w) * alpha + 1e-9) continue;
      OptimizedParams out;
      out.kstar = kstar;
      out.w = w;
      out.count = std::move(count);
      out.log2Count = log2BigInt(out.count);
      return out;
    }
  }
  throw std::runtime_error("no admissible witness parameters found");
}

}  // namespace holderlab
