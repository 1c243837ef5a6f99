#include "holderlab/tri_complex.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>
#include <stdexcept>

namespace holderlab {

namespace {

inline int exponentOf(double x) {  // floor(log2 x) for normal positive x
  std::uint64_t b;
  std::memcpy(&b, &x, sizeof b);
  return static_cast<int>((b >> 52) & 0x7ff) - 1023;
}

}  // namespace

double holderAuditField(const TriComplex& cx, const VertexField<double>& f, double c,
                        double alpha) {
  const std::uint32_t nv = cx.vertexCount();
  std::vector<double> us(nv), vs(nv);
  for (std::uint32_t i = 0; i < nv; ++i) {
    auto [a, b] = cx.vertexScaled(i);
    us[i] = static_cast<double>(a);
    vs[i] = static_cast<double>(b);
  }
  const double inv2 = std::ldexp(1.0, -2 * cx.depth());  // rescale squared distances
  // lower bounds of (d^2)^alpha per binary exponent of d^2, for cheap skipping
  double table[4200];
  for (int e = -2100; e < 2100; ++e) table[e + 2100] = std::exp2(alpha * e);

  double best = 0;  // running max of df^2 / (d^2)^alpha
  const double* F = f.values.data();
  for (std::uint32_t i = 0; i < nv; ++i) {
    const double ui = us[i], vi = vs[i], fi = F[i];
    for (std::uint32_t j = i + 1; j < nv; ++j) {
      const double du = ui - us[j], dv = vi - vs[j];
      const double d2 = (du * du + du * dv + dv * dv) * inv2;
      const double df = fi - F[j];
      const double df2 = df * df;
      if (df2 <= best * table[exponentOf(d2) + 2100]) continue;  // cannot beat the max
      const double q = df2 / std::pow(d2, alpha);
      if (q > best) best = q;
    }
  }
  return std::sqrt(best) / c;
}

HolderFieldResult randomHolderField(const TriComplex& cx, std::uint64_t seed, double c,
                                    double alpha, double perturbFactor, int maxRetries,
                                    bool audit) {
  if (!(c > 0) || !(alpha > 0) || alpha > 1)
    throw std::invalid_argument("randomHolderField: need c > 0 and alpha in (0, 1]");
  if (perturbFactor < 0 || perturbFactor > 1)
    throw std::invalid_argument("randomHolderField: perturbFactor outside [0, 1]");

  const double decay = 1.0 - std::exp2(alpha - 1.0);  // drives the level sums geometric
  CounterRng master(seed);
  HolderFieldResult res;
  res.meta = {c, alpha};
  for (int attempt = 0; attempt <= maxRetries; ++attempt) {
    CounterRng rng = master.stream(static_cast<std::uint64_t>(attempt));
    VertexField<double> f;
    f.values.assign(cx.vertexCount(), std::numeric_limits<double>::quiet_NaN());
    const std::uint32_t* root = cx.cellVertices(0, 0);
    for (int j = 0; j < 3; ++j) f.values[root[j]] = 0.4 * c * rng.uniform01(root[j]);
    for (int l = 1; l <= cx.depth(); ++l) {
      const double mag = perturbFactor * 0.25 * c * decay * std::exp2(-l * alpha);
      for (std::uint64_t p = 0; p < cx.cellCount(l - 1); ++p) {
        const std::uint32_t* pc = cx.cellVertices(l - 1, p);
        for (int d = 0; d < 3; ++d) {
          const std::uint32_t* cc = cx.cellVertices(l, p * 3 + d);
          for (int j = 0; j < 3; ++j) {
            if (j == d || !std::isnan(f.values[cc[j]])) continue;
            f.values[cc[j]] = 0.5 * (f.values[pc[d]] + f.values[pc[j]]) +
                              mag * rng.uniformSym(cc[j]);
          }
        }
      }
    }
    double ratio = audit ? holderAuditField(cx, f, c, alpha) : 0.0;
    if (ratio <= 1.0 + 1e-12) {
      res.field = std::move(f);
      res.maxRatio = ratio;
      res.retries = attempt;
      return res;
    }
  }
  throw std::runtime_error("randomHolderField: audit kept failing; retry budget exhausted");
}

double guardedQuery(const TriComplex& cx, const VertexField<double>& f, const CounterRng& rng,
                    std::uint64_t counter, double guard, int maxTries) {
  (void)cx;
  double lo = f.values[0], hi = lo;
  for (double v : f.values) {
    if (v < lo) lo = v;
    if (v > hi) hi = v;
  }
  if (!(hi - lo > 4 * guard))
    throw std::domain_error("guardedQuery: field range too small for the guard");
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
  throw std::runtime_error("guardedQuery: no guarded value found");
}

}  // namespace holderlab
