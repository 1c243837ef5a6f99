#include "holderlab/curves.hpp"

#include "holderlab/report.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace holderlab {

namespace {
constexpr double kLn2 = 0.6931471805599453094172321214581766;
constexpr double kLn3 = 1.0986122886681096913952452369225257;
constexpr double kLn6 = kLn2 + kLn3;

double xlnx(double x) { return x > 0 ? x * std::log(x) : 0.0; }
}  // namespace

double domainMax(BoundKind k) {
  switch (k) {
    case BoundKind::Lower: return 0.5;
    case BoundKind::LowerBox: return 1.0 / 3.0;
    case BoundKind::Upper: return 0.5;
  }
  throw std::logic_error("domainMax: bad kind");
}

double evalH(BoundKind k, double t) {
  if (!(t > 0) || t > domainMax(k) * (1 + 1e-15))
    throw std::domain_error("evalH: argument outside (0, domainMax]");
  switch (k) {
    case BoundKind::Lower:
      return (-xlnx(t) - xlnx(1 - t) + t * kLn6) / ((1 + t) * kLn2);
    case BoundKind::LowerBox:
      return (xlnx(1 - t) - xlnx(t) - xlnx(1 - 2 * t) + t * kLn3) / kLn2;
    case BoundKind::Upper:
      return (-xlnx(1 - t) - xlnx(t) + t * kLn2) / ((1 + t) * kLn2);
  }
  throw std::logic_error("evalH: bad kind");
}

double invertH(BoundKind k, double alpha, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("invertH: tol must be positive");
  const double hiT = domainMax(k);
  const double top = evalH(k, hiT);
  if (!(alpha > 0) || alpha > top)
    throw std::domain_error("invertH: alpha outside (0, h(domainMax)]");
  double lo = 0.0, hi = hiT;  // evalH -> 0 as t -> 0+, increasing
  for (int i = 0; i < 300 && hi - lo > 0; ++i) {
    double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;  // interval collapsed to adjacent doubles
    (evalH(k, mid) < alpha ? lo : hi) = mid;
  }
  double t = hi;  // keep the endpoint that is guaranteed inside the domain
  if (std::abs(evalH(k, t) - alpha) > tol)
    throw std::runtime_error("invertH: bisection failed to meet tolerance");
  return t;
}

double exponentC(double d1, double alpha) {
  if (!(d1 > 0) || d1 > 0.5) throw std::domain_error("exponentC: d1 outside (0, 1/2]");
  return -(xlnx(d1) + xlnx(1 - d1)) + d1 * kLn6 - alpha * (1 + d1) * kLn2;
}

double exponentCBox(double d1, double alpha) {
  if (!(d1 > 0) || d1 > 1.0 / 3.0)
    throw std::domain_error("exponentCBox: d1 outside (0, 1/3]");
  return xlnx(1 - d1) - xlnx(d1) - xlnx(1 - 2 * d1) + d1 * kLn3 - alpha * kLn2;
}

namespace {

double logBinomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  if (n <= 300) return std::log(binomial(n, k).convert_to<double>());
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double logSumExp(const std::vector<double>& xs) {
  double m = -std::numeric_limits<double>::infinity();
  for (double x : xs) m = std::max(m, x);
  if (!std::isfinite(m)) return m;
  double s = 0;
  for (double x : xs) s += std::exp(x - m);
  return m + std::log(s);
}

int termCount(int n, double d1) {
  // k runs to floor(n*d1); nudge past representation error on products like 5*0.2
  return static_cast<int>(std::floor(n * d1 + 1e-9));
}

}  // namespace

double seriesLogM(int n, double d1, double alpha) {
  if (n < 1) throw std::invalid_argument("seriesLogM: n must be >= 1");
  if (!(d1 > 0) || d1 >= 1) throw std::domain_error("seriesLogM: d1 outside (0, 1)");
  std::vector<double> terms;
  for (int k = 0; k <= termCount(n, d1); ++k)
    terms.push_back(logBinomial(n, k) + k * kLn6 - (n + k) * alpha * kLn2);
  return logSumExp(terms);
}

double seriesLogMBox(int n, double d1, double alpha) {
  if (n < 1) throw std::invalid_argument("seriesLogMBox: n must be >= 1");
  if (!(d1 > 0) || d1 >= 1) throw std::domain_error("seriesLogMBox: d1 outside (0, 1)");
  std::vector<double> terms;
  for (int k = 0; k <= termCount(n, d1); ++k)
    terms.push_back(logBinomial(n - k, k) + k * kLn3 - n * alpha * kLn2);
  return kLn6 + logSumExp(terms);
}

std::vector<CurveRow> curveTable(double alphaMin, double alphaMax, int steps, bool logGrid) {
  if (!(alphaMin > 0) || !(alphaMax < 1) || alphaMin > alphaMax)
    throw std::domain_error("curveTable: need 0 < alphaMin <= alphaMax < 1");
  if (steps < 1) throw std::invalid_argument("curveTable: steps must be >= 1");
  std::vector<CurveRow> rows;
  for (int i = 0; i <= steps; ++i) {
    double s = static_cast<double>(i) / steps;
    double a = logGrid ? alphaMin * std::pow(alphaMax / alphaMin, s)
                       : alphaMin + (alphaMax - alphaMin) * s;
    CurveRow row;
    row.alpha = a;
    row.lowerRaw = invertH(BoundKind::Lower, a);
    row.lowerHausdorff = row.lowerRaw / (1 + row.lowerRaw);
    row.lowerBox = invertH(BoundKind::LowerBox, a);
    row.upperRaw = invertH(BoundKind::Upper, a);
    row.upper = row.upperRaw / (1 + row.upperRaw);
    rows.push_back(row);
  }
  return rows;
}

void writeCurveCsv(std::ostream& out, const std::vector<CurveRow>& rows) {
  out << "alpha,lower_raw,lower_hausdorff,lower_box,upper_raw,upper\n";
  for (const CurveRow& r : rows)
    out << fmt17(r.alpha) << ',' << fmt17(r.lowerRaw) << ',' << fmt17(r.lowerHausdorff) << ','
        << fmt17(r.lowerBox) << ',' << fmt17(r.upperRaw) << ',' << fmt17(r.upper) << '\n';
}

bool curveInvariantsHold(const std::vector<CurveRow>& rows) {
  for (const CurveRow& r : rows) {
    for (double v : {r.lowerRaw, r.lowerHausdorff, r.lowerBox, r.upperRaw, r.upper})
      if (!(v > 0) || v > 1) return false;
    if (r.lowerHausdorff > r.upper) return false;
    if (r.lowerBox < r.lowerHausdorff) return false;
  }
  return true;
}

double asymptoticGap(double alpha) {
  double up = invertH(BoundKind::Upper, alpha);
  double lo = invertH(BoundKind::Lower, alpha);
  return (up - lo) / up;
}

}  // namespace holderlab
