#include <doctest.h>

#include "holderlab/scheme.hpp"

#include <json.hpp>

#include <set>
#include <sstream>
#include <stdexcept>
#include <string>

using namespace holderlab;

TEST_CASE("family sizes follow the sevenfold law") {
  CHECK(familySize(1) == 3);
  CHECK(familySize(2) == 21);
  CHECK(familySize(8) == 2470629);
  BigInt p = 3;
  for (int i = 0; i < 19; ++i) p *= 7;
  CHECK(familySize(20) == p);
}

TEST_CASE("census closed form matches the recursion") {
  for (int n = 1; n <= 20; ++n) {
    std::vector<BigInt> closed = perRootCensus(n);
    std::vector<BigInt> rec = perRootCensusRecursive(n);
    REQUIRE(closed.size() == static_cast<size_t>(n));
    REQUIRE(rec.size() == static_cast<size_t>(n));
    BigInt total = 0;
    BigInt six = 1;
    for (int k = 0; k < n; ++k) {
      CHECK(closed[k] == binomial(n - 1, k) * six);
      CHECK(closed[k] == rec[k]);
      total += closed[k];
      six *= 6;
    }
    CHECK(total * 3 == familySize(n));
  }
}

TEST_CASE("binomial coefficients are exact") {
  CHECK(binomial(0, 0) == 1);
  CHECK(binomial(5, 2) == 10);
  CHECK(binomial(52, 5) == 2598960);
  CHECK(binomial(300, 150) == binomial(300, 150));
  CHECK(binomial(10, -1) == 0);
  CHECK(binomial(10, 11) == 0);
  for (int n = 0; n <= 40; ++n)
    for (int k = 0; k <= n; ++k) CHECK(binomial(n, k) == binomial(n, n - k));
}

TEST_CASE("expanded families satisfy the conductivity law") {
  ConductivityScheme s = ConductivityScheme::expand(4);
  REQUIRE(s.maxN() == 4);
  for (int n = 1; n <= 4; ++n) {
    const std::vector<SchemeNode>& fam = s.family(n);
    CHECK(BigInt(fam.size()) == familySize(n));
    std::vector<BigInt> hist(n, 0);
    std::set<std::pair<std::uint64_t, int>> distinct;
    for (const SchemeNode& t : fam) {
      int level = t.addr.level();
      REQUIRE(level >= n);
      REQUIRE(level <= 2 * n - 1);
      REQUIRE(int(t.kExp) == level - n);
      KappaWalk w = KappaWalk::ofAddress(t.addr);
      REQUIRE(w.schemeState);
      REQUIRE(w.schemeIndex == n);
      REQUIRE(w.kExp == int(t.kExp));
      ++hist.at(t.kExp);
      distinct.insert({t.addr.bits, level});
    }
    CHECK(distinct.size() == fam.size());  // no duplicates
    std::vector<BigInt> expect = perRootCensus(n);
    for (int k = 0; k < n; ++k) CHECK(hist[k] == expect[k] * 3);
  }
}

TEST_CASE("every deep address has exactly one scheme ancestor") {
  for (int n = 1; n <= 4; ++n) CHECK(coverAuditExhaustive(n));
}

TEST_CASE("node budget is enforced") {
  CHECK_THROWS_AS(ConductivityScheme::expand(6, 100), std::length_error);
}

TEST_CASE("the distinguished child shares a vertex with the grandparent") {
  // symbolic rule: the child keeping the parent's conductivity is the one
  // whose digit equals the parent's own last digit; geometrically it is the
  // unique child meeting the vertex set of the grandparent cell
  std::vector<TriAddress> frontier = {TriAddress{}};
  for (int level = 0; level < 6; ++level) {
    std::vector<TriAddress> next;
    for (const TriAddress& t : frontier)
      for (int d = 0; d < 3; ++d) next.push_back(t.child(d));
    for (const TriAddress& t : next) {
      if (t.level() < 1) continue;
      std::array<Point, 3> up = realizeCorners(t.parent());
      for (int d = 0; d < 3; ++d) {
        std::array<Point, 3> down = realizeCorners(t.child(d));
        int shared = 0;
        for (const Point& a : up)
          for (const Point& b : down)
            if (a == b) ++shared;
        if (d == t.lastDigit())
          CHECK(shared == 1);
        else
          CHECK(shared == 0);
      }
    }
    frontier = std::move(next);
  }
}

TEST_CASE("atlas export is one json object per node in family order") {
  ConductivityScheme s = ConductivityScheme::expand(2);
  std::ostringstream out;
  s.writeAtlas(out);
  std::istringstream in(out.str());
  std::string line;
  for (int n = 1; n <= 2; ++n) {
    for (const SchemeNode& t : s.family(n)) {
      REQUIRE(std::getline(in, line));
      nlohmann::json j = nlohmann::json::parse(line);
      CHECK(j["address"].get<std::string>() == t.addr.str());
      CHECK(j["n"].get<int>() == n);
      CHECK(j["kExp"].get<int>() == int(t.kExp));
    }
  }
  CHECK_FALSE(std::getline(in, line));  // nothing after the last node
  CHECK(out.str().substr(0, out.str().find('\n')) ==
        "{\"address\":\"0\",\"n\":1,\"kExp\":0}");
}

TEST_CASE("histogram export lists exact counts for all three roots") {
  ConductivityScheme s = ConductivityScheme::expand(3);
  std::ostringstream out;
  s.writeHistogram(out);
  CHECK(out.str() ==
        "n,kExp,count\n"
        "1,0,3\n"
        "2,0,3\n"
        "2,1,18\n"
        "3,0,3\n"
        "3,1,36\n"
        "3,2,108\n");
}
