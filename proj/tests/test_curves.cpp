#include <doctest.h>

#include "holderlab/curves.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <vector>

using namespace holderlab;

namespace {
const BoundKind kKinds[] = {BoundKind::Lower, BoundKind::LowerBox, BoundKind::Upper};
}

TEST_CASE("curve values at the domain endpoints") {
  CHECK(domainMax(BoundKind::Lower) == 0.5);
  CHECK(domainMax(BoundKind::LowerBox) == 1.0 / 3.0);
  CHECK(domainMax(BoundKind::Upper) == 0.5);

  CHECK(evalH(BoundKind::Lower, 0.5) ==
        doctest::Approx(1.528320833573719).epsilon(1e-14));
  CHECK(evalH(BoundKind::LowerBox, 1.0 / 3.0) ==
        doctest::Approx(1.194987500240385).epsilon(1e-14));
  // exact: every floating step of the formula is exact at t = 1/2
  CHECK(evalH(BoundKind::Upper, 0.5) == 1.0);

  CHECK(evalH(BoundKind::Lower, 0.5) > 1.0);
  CHECK(evalH(BoundKind::LowerBox, 1.0 / 3.0) > 1.0);
}

TEST_CASE("curves reject arguments off their domains") {
  for (BoundKind k : kKinds) {
    CHECK_THROWS_AS(evalH(k, 0.0), std::domain_error);
    CHECK_THROWS_AS(evalH(k, -0.1), std::domain_error);
    CHECK_THROWS_AS(evalH(k, domainMax(k) + 0.01), std::domain_error);
    CHECK_THROWS_AS(invertH(k, 0.0), std::domain_error);
    CHECK_THROWS_AS(invertH(k, evalH(k, domainMax(k)) + 0.01), std::domain_error);
    CHECK_THROWS_AS(invertH(k, 0.5, -1e-9), std::invalid_argument);
  }
}

TEST_CASE("curves increase strictly") {
  for (BoundKind k : kKinds) {
    double prev = 0;
    for (int i = 1; i <= 200; ++i) {
      double t = domainMax(k) * i / 200;
      double h = evalH(k, t);
      CHECK(h > prev);
      prev = h;
    }
  }
}

TEST_CASE("inversion round trips in value space") {
  for (BoundKind k : kKinds) {
    double top = evalH(k, domainMax(k));
    for (int i = 1; i <= 50; ++i) {
      double alpha = top * i / 50;
      double t = invertH(k, alpha);
      CHECK(t > 0);
      CHECK(t <= domainMax(k));
      CHECK(std::fabs(evalH(k, t) - alpha) <= 1e-12);
    }
  }
}

TEST_CASE("frozen inverse values") {
  CHECK(invertH(BoundKind::Upper, 1.0) ==
        doctest::Approx(0.499999989719043).epsilon(1e-13));
  CHECK(invertH(BoundKind::Lower, 1.0) ==
        doctest::Approx(0.189289624915232).epsilon(1e-13));
  CHECK(invertH(BoundKind::Upper, 0.99) ==
        doctest::Approx(0.429724419836581).epsilon(1e-13));
  CHECK(invertH(BoundKind::Upper, 0.9) ==
        doctest::Approx(0.291644107470640).epsilon(1e-13));
}

TEST_CASE("lower minus upper equals t log2(3) over (1+t)") {
  const double log2of3 = std::log2(3.0);
  for (int i = 1; i <= 500; ++i) {
    double t = 0.5 * i / 500;
    double gap = (evalH(BoundKind::Lower, t) - evalH(BoundKind::Upper, t)) * (1 + t);
    CHECK(std::fabs(gap - t * log2of3) <= 1e-12);
  }
}

TEST_CASE("series exponents change sign exactly at the curves") {
  for (int i = 1; i <= 20; ++i) {
    double d1 = 0.5 * i / 20;
    for (int j = 1; j <= 20; ++j) {
      double alpha = 0.999 * j / 20;
      double h = evalH(BoundKind::Lower, d1);
      double c = exponentC(d1, alpha);
      if (h > alpha) CHECK(c > 0);
      if (h < alpha) CHECK(c < 0);
      if (d1 <= 1.0 / 3.0) {
        double hb = evalH(BoundKind::LowerBox, d1);
        double cb = exponentCBox(d1, alpha);
        if (hb > alpha) CHECK(cb > 0);
        if (hb < alpha) CHECK(cb < 0);
      }
    }
  }
  CHECK_THROWS_AS(exponentC(0.6, 0.5), std::domain_error);
  CHECK_THROWS_AS(exponentCBox(0.4, 0.5), std::domain_error);
}

TEST_CASE("series logs match direct summation for small n") {
  for (int n : {1, 2, 5, 10, 17, 25}) {
    for (double d1 : {0.2, 0.3, 0.45}) {
      for (double alpha : {0.4, 0.8, 1.2}) {
        int kMax = static_cast<int>(std::floor(n * d1 + 1e-9));
        long double sum = 0, sumBox = 0;
        long double binom = 1;  // C(n, k), updated multiplicatively
        for (int k = 0; k <= kMax; ++k) {
          sum += binom * std::pow(6.0L, k) * std::pow(2.0L, -(n + k) * (long double)alpha);
          long double binomBox = 1;  // C(n-k, k)
          for (int i = 1; i <= k; ++i) binomBox = binomBox * (n - k - i + 1) / i;
          sumBox += binomBox * std::pow(3.0L, k) * std::pow(2.0L, -n * (long double)alpha);
          binom = binom * (n - k) / (k + 1);
        }
        sumBox *= 6;
        CHECK(seriesLogM(n, d1, alpha) ==
              doctest::Approx((double)std::log(sum)).epsilon(1e-12));
        CHECK(seriesLogMBox(n, d1, alpha) ==
              doctest::Approx((double)std::log(sumBox)).epsilon(1e-12));
      }
    }
  }
  CHECK_THROWS_AS(seriesLogM(0, 0.3, 0.5), std::invalid_argument);
  CHECK_THROWS_AS(seriesLogM(5, 1.5, 0.5), std::domain_error);
  CHECK_THROWS_AS(seriesLogMBox(0, 0.3, 0.5), std::invalid_argument);
}

TEST_CASE("log-gamma branch agrees with exact binomials past the cutoff") {
  for (int n : {301, 350}) {
    for (double alpha : {0.5, 1.1}) {
      const double d1 = 0.3;
      int kMax = static_cast<int>(std::floor(n * d1 + 1e-9));
      std::vector<double> logTerms;
      double m = -1e300;
      for (int k = 0; k <= kMax; ++k) {
        double lt = std::log(binomial(n, k).convert_to<double>()) +
                    k * std::log(6.0) - (n + k) * alpha * std::log(2.0);
        logTerms.push_back(lt);
        m = std::max(m, lt);
      }
      long double s = 0;
      for (double lt : logTerms) s += std::exp((long double)(lt - m));
      double expect = m + (double)std::log(s);
      CHECK(seriesLogM(n, d1, alpha) == doctest::Approx(expect).epsilon(1e-10));
    }
  }
}

TEST_CASE("curve table grids and invariants") {
  std::vector<CurveRow> lin = curveTable(0.3, 0.9, 3, false);
  REQUIRE(lin.size() == 4);
  CHECK(lin[0].alpha == 0.3);
  CHECK(lin[3].alpha == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(lin[1].alpha == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(curveInvariantsHold(lin));

  std::vector<CurveRow> lg = curveTable(0.1, 0.4, 2, true);
  REQUIRE(lg.size() == 3);
  CHECK(lg[1].alpha == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(curveInvariantsHold(lg));

  for (const CurveRow& r : lin) {
    CHECK(r.lowerHausdorff == r.lowerRaw / (1 + r.lowerRaw));
    CHECK(r.upper == r.upperRaw / (1 + r.upperRaw));
  }

  std::vector<CurveRow> bad = lin;
  bad[1].lowerHausdorff = bad[1].upper + 0.01;
  CHECK_FALSE(curveInvariantsHold(bad));
  bad = lin;
  bad[2].upperRaw = 1.5;
  CHECK_FALSE(curveInvariantsHold(bad));

  CHECK_THROWS_AS(curveTable(0.0, 0.5, 2, false), std::domain_error);
  CHECK_THROWS_AS(curveTable(0.2, 1.0, 2, false), std::domain_error);
  CHECK_THROWS_AS(curveTable(0.5, 0.2, 2, false), std::domain_error);
  CHECK_THROWS_AS(curveTable(0.2, 0.5, 0, false), std::invalid_argument);
}

TEST_CASE("curve csv layout") {
  std::vector<CurveRow> rows = curveTable(0.4, 0.4, 1, false);
  std::ostringstream out;
  writeCurveCsv(out, rows);
  std::istringstream in(out.str());
  std::string line;
  REQUIRE(std::getline(in, line));
  CHECK(line == "alpha,lower_raw,lower_hausdorff,lower_box,upper_raw,upper");
  REQUIRE(std::getline(in, line));
  CHECK(line.substr(0, line.find(',')) == "0.40000000000000002");
  int commas = 0;
  for (char ch : line)
    if (ch == ',') ++commas;
  CHECK(commas == 5);
}

TEST_CASE("relative gap shrinks toward small alpha") {
  double prev = asymptoticGap(1e-1);
  CHECK(prev > 0);
  for (double alpha : {1e-2, 1e-3, 1e-4}) {
    double g = asymptoticGap(alpha);
    CHECK(g > 0);
    CHECK(g < prev);
    prev = g;
  }
}
