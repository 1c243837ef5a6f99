#include <doctest.h>

#include "holderlab/geometry.hpp"
#include "holderlab/phi.hpp"

#include <cmath>
#include <stdexcept>

using namespace holderlab;

namespace {

const Point A{0, 0};
const Point B{1, 0};
const Point C{0, 1};

Dyadic half() { return Dyadic::fromParts(1, 1); }
Dyadic quarter() { return Dyadic::fromParts(1, 2); }

bool sameMap(const Affine& f, const Affine& g) {
  return f.apply(A) == g.apply(A) && f.apply(B) == g.apply(B) &&
         f.apply(C) == g.apply(C);
}

}  // namespace

TEST_CASE("frame is metrically equilateral") {
  CHECK(sqDist(A, B) == Dyadic(1));
  CHECK(sqDist(A, C) == Dyadic(1));
  CHECK(sqDist(B, C) == Dyadic(1));
  CHECK(sqLenEquilateral(half(), half()) == Dyadic::fromParts(3, 2));
  CHECK(sqDist(A, midpoint(B, C)) == Dyadic::fromParts(3, 2));
}

TEST_CASE("embedding sends the frame to a Euclidean equilateral triangle") {
  double x, y;
  embedXY(A, x, y);
  CHECK(x == 0.0);
  CHECK(y == 0.0);
  embedXY(B, x, y);
  CHECK(x == 1.0);
  CHECK(y == 0.0);
  embedXY(C, x, y);
  CHECK(x == 0.5);
  CHECK(y == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-15));
}

TEST_CASE("point algebra and order key on side AB") {
  CHECK(B + C - B == C);
  CHECK(midpoint(A, B) == Point{half(), 0});
  Segment s{A, C};
  CHECK(s.mid() == Point{0, half()});

  CHECK(abOrderKey(B) == Dyadic(0));
  CHECK(abOrderKey(A) == Dyadic(1));
  CHECK(abOrderKey(midpoint(A, B)) == half());
  CHECK_THROWS_AS(abOrderKey(C), std::invalid_argument);
}

TEST_CASE("rotations permute the frame directions") {
  const Point ba = B - A, cb = C - B, ac = A - C;
  CHECK(rot120().apply(ba) == cb);
  CHECK(rot120().apply(cb) == ac);
  CHECK(rot120().apply(ac) == ba);
  CHECK(rot240().apply(ba) == ac);
  CHECK(sameMap(rot120().compose(rot120()), rot240()));
  CHECK(sameMap(rot120().compose(rot240()), rot0()));
  CHECK(rot120().det() == Dyadic(1));
  CHECK(rot240().det() == Dyadic(1));
  CHECK(rot120().isDirectSimilarity(Dyadic(1)));
}

TEST_CASE("similarity predicate checks ratio and orientation") {
  CHECK(Affine::identity().isDirectSimilarity(Dyadic(1)));
  CHECK(Affine::scaling(half()).isDirectSimilarity(half()));
  CHECK_FALSE(Affine::scaling(half()).isDirectSimilarity(quarter()));
  Affine reflection{1, 0, 0, -1, 0, 0};  // det < 0
  CHECK_FALSE(reflection.isDirectSimilarity(Dyadic(1)));
}

TEST_CASE("compose applies the right-hand map first") {
  Affine shift{1, 0, 0, 1, 1, 0};
  Affine scale = Affine::scaling(half());
  CHECK(scale.compose(shift).apply(A) == Point{half(), 0});
  CHECK(shift.compose(scale).apply(A) == Point{1, 0});
}

TEST_CASE("solveDirectSimilarity recovers rotation and translation") {
  Affine plain = solveDirectSimilarity(A, Point{quarter(), quarter()}, B,
                                       Point{Dyadic::fromParts(3, 2), quarter()},
                                       half());
  CHECK(plain.isDirectSimilarity(half()));
  CHECK(sameMap(plain, Affine{half(), 0, 0, half(), quarter(), quarter()}));

  Affine turned = solveDirectSimilarity(A, B, B, Point{half(), half()}, half());
  CHECK(turned.isDirectSimilarity(half()));
  CHECK(turned.apply(A) == B);
  CHECK(turned.apply(B) == Point{half(), half()});
  Affine expect = Affine::scaling(half()).compose(rot120());
  expect.tu = Dyadic(1);
  CHECK(sameMap(turned, expect));

  // demands ratio 2, not 1/2
  CHECK_THROWS_AS(solveDirectSimilarity(A, A, B, Point{2, 0}, half()),
                  std::domain_error);
  // demands a rotation outside 0/120/240 degrees
  CHECK_THROWS_AS(solveDirectSimilarity(A, A, B, C, Dyadic(1)),
                  std::domain_error);
}

TEST_CASE("generator maps are direct similarities with the stated ratios") {
  const GenSystem& gs = GenSystem::get();
  for (int digit = 0; digit < 4; ++digit) {
    for (int branch = 1; branch <= 2; ++branch) {
      const GenMap& g = gs.at(digit, branch);
      CHECK(g.map.isDirectSimilarity(gs.ratio(digit)));
      CHECK(g.suffix.size() == static_cast<size_t>(gs.levelGain(digit)));
      // perm is a bijection of corner labels
      std::array<bool, 3> seen{false, false, false};
      for (int lbl : g.perm) {
        REQUIRE(lbl >= 0);
        REQUIRE(lbl < 3);
        seen[static_cast<size_t>(lbl)] = true;
      }
      CHECK((seen[0] && seen[1] && seen[2]));
      // ratio scales every squared edge length by ratio^2
      Dyadic r2 = gs.ratio(digit) * gs.ratio(digit);
      for (const Point& e : {B - A, C - B, A - C}) {
        Point im = g.map.apply(e) - g.map.apply(Point{0, 0});
        CHECK(sqLenEquilateral(im.u, im.v) == r2 * sqLenEquilateral(e.u, e.v));
      }
    }
  }
  CHECK(sameMap(gs.at(3, 1).map, gs.at(3, 2).map));
  CHECK(gs.levelGain(3) == 1);
  CHECK(gs.levelGain(0) == 2);
}

TEST_CASE("pinned generator images") {
  const GenSystem& gs = GenSystem::get();
  CHECK(gs.at(0, 1).map.apply(A) == B);
  CHECK(gs.at(0, 1).map.apply(B) == Point{Dyadic::fromParts(3, 2), quarter()});
  CHECK(gs.at(2, 1).map.apply(A) == midpoint(A, B));
}
