#include <doctest.h>

#include "holderlab/cross.hpp"

#include <cmath>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace holderlab;

TEST_CASE("retained-square counts match the closed form") {
  const std::int64_t expect[] = {12, 44, 204, 908, 3852, 15884};
  for (int m = 2; m <= 7; ++m) {
    CrossModel model(m);
    CHECK(model.m() == m);
    CHECK(model.side() == (1 << m));
    CHECK(model.half() == (1 << (m - 1)));
    CHECK(model.p() == expect[m - 2]);
    CHECK(CrossModel::pFormula(m) == expect[m - 2]);
    CHECK(model.connected());
    CHECK(model.squares().size() == static_cast<size_t>(model.p()));
  }
  CHECK_THROWS_AS(CrossModel(1), std::invalid_argument);
  CHECK_THROWS_AS(CrossModel(13), std::invalid_argument);
}

TEST_CASE("square list is lexicographic and indexed consistently") {
  CrossModel model(3);
  const auto& sq = model.squares();
  for (size_t k = 0; k + 1 < sq.size(); ++k) CHECK(sq[k] < sq[k + 1]);
  for (size_t k = 0; k < sq.size(); ++k) {
    CHECK(model.retained(sq[k].first, sq[k].second));
    CHECK(model.indexOf(sq[k].first, sq[k].second) == static_cast<int>(k));
  }
  CHECK_FALSE(model.retained(3, 1));  // interior midline square is omitted
  CHECK(model.indexOf(3, 1) == -1);
  CHECK(model.retained(0, 3));  // midline column survives at the boundary
}

TEST_CASE("square taxonomy") {
  CrossModel model(3);
  CHECK(model.isCornerSquare(0, 0));
  CHECK(model.isCornerSquare(7, 7));
  CHECK_FALSE(model.isCornerSquare(0, 1));
  CHECK(model.typeOf(0, 0, 4) == 1);

  CHECK(model.isThin(0, 3));       // two-square midline column
  CHECK(model.blockDepth(0, 3) == 0);
  CHECK(model.typeOf(0, 3, 4) == 2);

  CHECK_FALSE(model.isThin(0, 1));  // corner neighbor inside a block
  CHECK(model.blockDepth(0, 1) == 1);
  CHECK(model.typeOf(0, 1, 4) == 2);

  CHECK(model.blockDepth(1, 1) == 2);  // block center
  CHECK(model.typeOf(1, 1, 4) == 4);   // 2*depth reaches L = 4
  CHECK(model.typeOf(1, 1, 5) == 3);   // but not L = 5
  CHECK(model.blockDepth(2, 2) == 1);
  CHECK(model.typeOf(2, 2, 4) == 3);

  CHECK(CrossModel::kappaFactor(1, 7) == Rational(1));
  CHECK(CrossModel::kappaFactor(2, 7) == Rational(1, 2));
  CHECK(CrossModel::kappaFactor(3, 7) == Rational(1, 3));
  CHECK(CrossModel::kappaFactor(4, 7) == Rational(1, 7));
  CHECK_THROWS_AS(CrossModel::kappaFactor(5, 7), std::invalid_argument);
  CHECK_THROWS_AS(model.typeOf(3, 1, 4), std::invalid_argument);
  CHECK_THROWS_AS(model.typeOf(0, 0, 1), std::invalid_argument);
}

TEST_CASE("type counts per scheme parameter") {
  CrossModel m3(3);
  CrossTypeCounts c = crossTypeCounts(m3, 4);
  CHECK(c.t1 == 4);
  CHECK(c.t2 == 16);
  CHECK(c.t3 == 20);
  CHECK(c.t4 == 4);
  CHECK(c.thin == 8);
  CHECK(c.t1 + c.t2 + c.t3 + c.t4 == m3.p());
  CHECK(c.aL == 2.5);
  CHECK(c.bL == 0.0625);

  CrossModel m2(2);
  CrossTypeCounts c2 = crossTypeCounts(m2, 4);
  CHECK(c2.t1 == 4);
  CHECK(c2.t2 == 8);
  CHECK(c2.t3 == 0);
  CHECK(c2.t4 == 0);
  CHECK(c2.thin == 8);

  std::int64_t t2ref = -1;
  for (int m = 4; m <= 6; ++m) {
    CrossTypeCounts cc = crossTypeCounts(CrossModel(m), 10);
    if (t2ref < 0) t2ref = cc.t2;
    CHECK(cc.t2 == t2ref);  // corner-neighbor + thin population stabilizes
  }
  for (int m = 3; m <= 7; ++m) {
    CrossTypeCounts cc = crossTypeCounts(CrossModel(m), 4);
    CHECK(cc.t1 == 4);
    CHECK(cc.thin == 8);
    CHECK(cc.bL < 1.0);
  }
}

TEST_CASE("model json round trip and tamper detection") {
  CrossModel model(3);
  std::ostringstream out;
  model.writeJson(out);
  std::string text = out.str();

  std::istringstream in(text);
  CrossModel back = CrossModel::parseJson(in);
  CHECK(back.m() == 3);
  CHECK(back.p() == 44);
  CHECK(back.squares() == model.squares());

  std::string tampered = text;
  size_t pos = tampered.find("[0,1]");
  REQUIRE(pos != std::string::npos);
  tampered.replace(pos, 5, "[3,1]");
  std::istringstream bad(tampered);
  CHECK_THROWS_AS(CrossModel::parseJson(bad), std::runtime_error);

  std::istringstream garbage("not json");
  CHECK_THROWS(CrossModel::parseJson(garbage));
}

TEST_CASE("cross complex shape and digits") {
  CrossModel model(2);
  CrossComplex cx(model, 3);
  CHECK(cx.depth() == 3);
  CHECK(cx.branching() == 12);
  CHECK(cx.cellVertexCount() == 4);
  CHECK(cx.cellCount(0) == 1);
  CHECK(cx.cellCount(3) == 1728);
  CHECK(cx.vertexCount() == 2532);
  CHECK(cx.scaleExp() == 6);
  CHECK(cx.cellWidthScaled(0) == 64);
  CHECK(cx.cellWidthScaled(3) == 1);

  for (std::uint64_t idx : {std::uint64_t(0), std::uint64_t(143), std::uint64_t(1000)}) {
    std::vector<int> d = cx.cellDigits(3, idx);
    REQUIRE(d.size() == 3);
    std::uint64_t re = 0;
    for (int digit : d) {
      REQUIRE(digit >= 0);
      REQUIRE(digit < 12);
      re = re * 12 + static_cast<std::uint64_t>(digit);
    }
    CHECK(re == idx);
  }

  // cell vertex order is origin, +x, +y, +xy with the level's width
  const std::uint32_t* verts = cx.cellVertices(1, 5);
  auto o = cx.vertexScaled(verts[0]);
  auto px = cx.vertexScaled(verts[1]);
  auto py = cx.vertexScaled(verts[2]);
  auto pxy = cx.vertexScaled(verts[3]);
  std::uint32_t w = cx.cellWidthScaled(1);
  CHECK(px.first == o.first + w);
  CHECK(px.second == o.second);
  CHECK(py.first == o.first);
  CHECK(py.second == o.second + w);
  CHECK(pxy.first == o.first + w);
  CHECK(pxy.second == o.second + w);

  CHECK_THROWS_AS(CrossComplex(model, 0), std::invalid_argument);
  CHECK_THROWS_AS(CrossComplex(CrossModel(3), 3, 100), std::length_error);
}

TEST_CASE("conductivity multiplies type factors along the digits") {
  CrossModel model(2);
  CrossComplex cx(model, 2);
  for (std::uint64_t idx = 0; idx < cx.cellCount(2); ++idx) {
    Rational expect = 1;
    for (int digit : cx.cellDigits(2, idx)) {
      auto [i, j] = model.squares()[static_cast<size_t>(digit)];
      expect *= CrossModel::kappaFactor(model.typeOf(i, j, 4), 4);
    }
    CHECK(crossKappa(model, cx, 4, 2, idx) == expect);
  }
  CHECK(crossKappa(model, cx, 4, 0, 0) == Rational(1));
}

TEST_CASE("witness gap digits collapse to the flanking alphabet point") {
  using V = std::vector<int>;
  CHECK(crossPhiEval(3, V{4, 0}) == Rational(1, 2));
  CHECK(crossPhiEval(3, V{3, 7}) == Rational(1, 2));
  CHECK(crossPhiEval(3, V{4, 7}) == Rational(1));
  CHECK(crossPhiEval(3, V{5}) == Rational(1));
  CHECK(crossPhiEval(3, V{3, 4, 3}) == Rational(1, 4));
  CHECK(crossPhiEval(3, V{}) == Rational(0));
  CHECK(crossPhiEval(3, V{3, 3, 3}) == Rational(0));
  CHECK(crossPhiEval(3, V{4, 4, 4}) == Rational(7, 8));
  CHECK_THROWS_AS(crossPhiEval(1, V{0}), std::invalid_argument);
  CHECK_THROWS_AS(crossPhiEval(3, V{8}), std::invalid_argument);
}

TEST_CASE("witness is monotone in the coordinate") {
  // all length-3 digit strings for m = 2, compared against exact x positions
  std::map<Rational, Rational> seen;  // x -> phi
  for (int d0 = 0; d0 < 4; ++d0)
    for (int d1 = 0; d1 < 4; ++d1)
      for (int d2 = 0; d2 < 4; ++d2) {
        Rational x = Rational(d0, 4) + Rational(d1, 16) + Rational(d2, 64);
        Rational v = crossPhiEval(2, {d0, d1, d2});
        CHECK(v >= 0);
        CHECK(v <= 1);
        seen[x] = v;
      }
  Rational prev = -1;
  for (const auto& [x, v] : seen) {
    CHECK(v >= prev);
    prev = v;
  }
}

TEST_CASE("sampled Holder ratios stay under the certified bound") {
  CHECK(crossPhiHolderBound(3) ==
        doctest::Approx(2.0 * std::pow(7.0 / 6.0, 1.0 / 3.0)).epsilon(1e-15));
  CrossPhiSampleReport rep = crossPhiHolderSample(3, 8, 4000, 99);
  CHECK(rep.pairs == 3986);
  CHECK(rep.bound == doctest::Approx(2.1054531992187933).epsilon(1e-15));
  CHECK(rep.maxRatio == doctest::Approx(1.9054588331977507).epsilon(1e-12));
  CHECK(rep.maxRatio <= rep.bound);
  CHECK(rep.pass);
}

TEST_CASE("ramp fields are coordinate functions with monotone profiles") {
  CrossModel model(2);
  CrossComplex cx(model, 2);
  CounterRng rng(31);
  for (CrossFieldKind kind : {CrossFieldKind::RampX, CrossFieldKind::RampY,
                              CrossFieldKind::PhiRamp}) {
    VertexField<double> f = crossTestField(cx, kind, rng, 3);
    REQUIRE(f.values.size() == cx.vertexCount());
    VertexField<double> again = crossTestField(cx, kind, rng, 3);
    CHECK(again.values == f.values);
    VertexField<double> other = crossTestField(cx, kind, rng, 4);
    CHECK(other.values != f.values);

    // value depends only on the ramp coordinate
    std::map<std::uint32_t, double> byCoord;
    for (std::uint32_t v = 0; v < cx.vertexCount(); ++v) {
      auto [xs, ys] = cx.vertexScaled(v);
      std::uint32_t key = (kind == CrossFieldKind::RampY) ? ys : xs;
      auto it = byCoord.find(key);
      if (it == byCoord.end())
        byCoord[key] = f.values[v];
      else
        CHECK(it->second == f.values[v]);
    }
    if (kind != CrossFieldKind::PhiRamp) {
      double prev = -1e300;
      for (const auto& [key, val] : byCoord) {
        CHECK(val > prev);
        prev = val;
      }
    }
  }
}

TEST_CASE("guarded queries stay clear of sampled values") {
  CrossModel model(3);
  CrossComplex cx(model, 2);
  CounterRng rng(77);
  VertexField<double> f = crossTestField(cx, CrossFieldKind::RampX, rng, 1);
  for (std::uint64_t q = 2; q < 8; ++q) {
    double r = crossGuardedQuery(cx, f, rng, q);
    double gap = 1e300;
    for (double v : f.values) gap = std::min(gap, std::fabs(r - v));
    CHECK(gap >= 0x1.0p-40);
  }
}

TEST_CASE("descendant conductivity never drops below the parent") {
  CrossModel model(3);
  CrossComplex cx(model, 2);
  CounterRng rng(77);
  VertexField<double> f = crossTestField(cx, CrossFieldKind::RampX, rng, 1);
  double r = crossGuardedQuery(cx, f, rng, 2);
  CrossConductivityReport rep = crossConductivityAudit(model, cx, f, r, 4);
  CHECK(rep.parentsChecked == 7);
  CHECK(rep.comparisons == 8);
  CHECK(rep.violations == 0);
  CHECK(rep.minSlack == doctest::Approx(7.0 / 18.0).epsilon(1e-15));

  CrossModel m2(2);
  CrossComplex cx2(m2, 2);
  for (std::uint64_t t = 0; t < 5; ++t) {
    VertexField<double> g = crossTestField(
        cx2, t % 2 ? CrossFieldKind::PhiRamp : CrossFieldKind::RampY, rng, 100 + t);
    double rq = crossGuardedQuery(cx2, g, rng, 200 + t);
    CrossConductivityReport rr = crossConductivityAudit(m2, cx2, g, rq, 4);
    CHECK(rr.violations == 0);
    CHECK(rr.minSlack >= 0.0);
  }
}

TEST_CASE("level sections double per level") {
  CrossModel model(3);
  std::vector<int> bits{0, 1, 0, 1, 1, 0};
  SectionCountReport rep = levelSectionCount(model, bits, 6);
  REQUIRE(rep.counts.size() == 6);
  std::uint64_t expect = 2;
  for (std::uint64_t c : rep.counts) {
    CHECK(c == expect);
    expect *= 2;
  }
  CHECK(rep.slope == 1.0 / 3.0);

  CHECK_THROWS_AS(levelSectionCount(model, bits, 7), std::invalid_argument);
  CHECK_THROWS_AS(levelSectionCount(model, {0, 2}, 2), std::invalid_argument);
  CHECK_THROWS_AS(levelSectionCount(model, {}, 0), std::invalid_argument);
}

TEST_CASE("piecewise-affine approximation is standard, anchored and Lipschitz") {
  CrossModel model(2);
  CrossComplex cx(model, 2);
  CounterRng rng(77);

  for (std::uint64_t t = 0; t < 3; ++t) {
    CrossFieldKind kind = t == 0   ? CrossFieldKind::RampX
                          : t == 1 ? CrossFieldKind::RampY
                                   : CrossFieldKind::PhiRamp;
    VertexField<double> f = crossTestField(cx, kind, rng, 50 + t);

    // Lipschitz constant of f on the level-n corner grid, measured directly
    double mConst = 0;
    double pw = std::ldexp(1.0, -1 * 2);  // level-1 cell width, m = 2
    for (std::uint64_t i = 0; i < cx.cellCount(1); ++i) {
      const std::uint32_t* v = cx.cellVertices(1, i);
      const int edges[4][2] = {{0, 1}, {2, 3}, {0, 2}, {1, 3}};
      for (const auto& e : edges)
        mConst = std::max(
            mConst, std::fabs(f.values[v[e[0]]] - f.values[v[e[1]]]) / pw);
    }

    CrossApproxReport rep = piecewiseAffineApprox(model, cx, f, 1, mConst);
    CHECK(rep.standardOk);
    CHECK(rep.anchorsOk);
    CHECK(rep.lipBound == 2.0 * mConst);  // 2^{m-1} with m = 2
    CHECK(rep.sampledLip <= rep.lipBound + 1e-12);
    CHECK(rep.lipOk);
    REQUIRE(rep.approx.values.size() == cx.vertexCount());

    // anchor agreement, rechecked here: every level-1 corner keeps its value
    for (std::uint64_t i = 0; i < cx.cellCount(1); ++i) {
      const std::uint32_t* v = cx.cellVertices(1, i);
      for (int k = 0; k < 4; ++k)
        CHECK(rep.approx.values[v[k]] == doctest::Approx(f.values[v[k]]).epsilon(1e-14));
    }
  }

  CrossComplex deep(model, 3);
  VertexField<double> f = crossTestField(deep, CrossFieldKind::RampX, rng, 9);
  CHECK_THROWS_AS(piecewiseAffineApprox(model, deep, f, 1, 1.0),
                  std::invalid_argument);
}

TEST_CASE("transition bounds at the reference parameters") {
  TransitionRecord t = transitionBounds(4, 16, 0.9);
  CHECK(t.m == 4);
  CHECK(t.L == 16);
  CHECK(t.alpha == 0.9);
  CHECK(t.feasible);
  CHECK(t.alpha1 == doctest::Approx(std::log2(3.0) / 2).epsilon(1e-15));
  CHECK(t.rangeNonempty);
  CHECK(t.betaHigh == doctest::Approx(std::log2(3.0)).epsilon(1e-15));
  CHECK(t.betaLow == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(t.betaLow < t.betaHigh);
  CHECK(t.dStarLower == doctest::Approx(std::log2(3.0) / 4).epsilon(1e-15));
  CHECK(t.dStarLower > 1.0 / 4);
  CHECK(t.smallAlphaDim == 0.25);

  TransitionRecord t8 = transitionBounds(4, 8, 0.9);
  CHECK_FALSE(t8.feasible);
  CHECK_FALSE(t8.rangeNonempty);

  TransitionRecord tlow = transitionBounds(4, 16, 0.5);
  CHECK(tlow.feasible);
  CHECK_FALSE(tlow.rangeNonempty);  // 0.5 < alpha1
  CHECK(tlow.betaLow > tlow.betaHigh);

  CHECK(feasibilityThresholdL() == doctest::Approx(9.0).epsilon(1e-9));
  CHECK_THROWS_AS(transitionBounds(1, 16, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(transitionBounds(4, 1, 0.9), std::invalid_argument);
  CHECK_THROWS_AS(transitionBounds(4, 16, 1.5), std::invalid_argument);
}

TEST_CASE("series exponent formula at frozen inputs") {
  CHECK(crossCExponent(4, 16, 0.9, 1.2, 0.01, 1.25, 16) ==
        doctest::Approx(1888.3879221525176).epsilon(1e-12));
  CHECK(crossCExponent(4, 16, 0.9, 1.292481250360578, 0.01, 11.5, 16) ==
        doctest::Approx(3364.0881830465523).epsilon(1e-12));
  // larger alpha shrinks the exponent (the -m alpha ln 2 term)
  CHECK(crossCExponent(4, 16, 0.95, 1.2, 0.01, 1.25, 16) <
        crossCExponent(4, 16, 0.9, 1.2, 0.01, 1.25, 16));
  CHECK_THROWS_AS(crossCExponent(4, 16, 0.9, 0.0, 0.01, 1.25, 16),
                  std::domain_error);
  CHECK_THROWS_AS(crossCExponent(4, 16, 0.9, 2.0, 0.01, 1.25, 16),
                  std::domain_error);
  CHECK_THROWS_AS(crossCExponent(1, 16, 0.9, 1.2, 0.01, 1.25, 16),
                  std::invalid_argument);
  CHECK_THROWS_AS(crossCExponent(4, 16, 0.9, 1.2, 0.01, 0.0, 16),
                  std::invalid_argument);
}
