#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "common.hpp"
#include "holderlab/cross.hpp"
#include "holderlab/report.hpp"
#include "holderlab/scheme.hpp"
#include "holderlab/tri_complex.hpp"

namespace holderlab::cli {
namespace {

// ---------------------------------------------------------------------------
// scheme

struct SchemeOpts {
  int depth = 3;
  bool histogram = false;
  bool verify = false;
  std::string out;
};

void runScheme(const SchemeOpts& o) {
  ConductivityScheme sch = ConductivityScheme::expand(o.depth);
  Output out(o.out);

  if (o.verify) {
    bool sizeOk = true, censusOk = true, kappaOk = true;
    for (int n = 1; n <= o.depth; ++n) {
      const auto& fam = sch.family(n);
      if (BigInt(fam.size()) != familySize(n)) sizeOk = false;

      std::vector<BigInt> hist(static_cast<std::size_t>(n), BigInt(0));
      for (const SchemeNode& node : fam) {
        const int level = node.addr.len;
        if (level < n || level > 2 * n - 1 || node.kExp != level - n) {
          kappaOk = false;
          continue;
        }
        hist[node.kExp] += 1;
        const KappaWalk w = KappaWalk::ofAddress(node.addr);
        if (!w.schemeState || w.schemeIndex != n || w.kExp != node.kExp)
          kappaOk = false;
      }

      const std::vector<BigInt> closed = perRootCensus(n);
      const std::vector<BigInt> recur = perRootCensusRecursive(n);
      for (int k = 0; k < n; ++k)
        if (hist[k] != 3 * closed[k] || hist[k] != 3 * recur[k]) censusOk = false;
    }

    const int coverN = std::min(o.depth, 5);
    const bool coverOk = coverAuditExhaustive(coverN);
    const bool ok = sizeOk && censusOk && kappaOk && coverOk;

    Json j;
    j["depth"] = o.depth;
    j["size_ok"] = sizeOk;
    j["census_ok"] = censusOk;
    j["kappa_ok"] = kappaOk;
    j["cover_n"] = coverN;
    j["cover_ok"] = coverOk;
    j["ok"] = ok;
    out.os() << j.dump(2) << "\n";
    if (!ok) throw AuditBreach("conductivity scheme self-check failed");
    return;
  }

  if (o.histogram)
    sch.writeHistogram(out.os());
  else
    sch.writeAtlas(out.os());
}

// ---------------------------------------------------------------------------
// levelset

struct LevelsetOpts {
  std::string fn = "xcoord";
  int depth = 7;
  std::string r = "sweep";
  double d1 = 0.3;
  double alpha = 0.6;
  double c = 1.0;
  std::uint64_t seed = 1;
  int nMax = 0;  // 0 -> (depth+1)/2
  std::string out;
};

// redraw the guarded query until the whole-triangle root cell straddles it,
// so descent trees exist at every level
double rootStraddlingQuery(const TriComplex& cx, const VertexField<double>& f,
                           const CounterRng& rng, std::uint64_t base, int* redraws) {
  for (int k = 0; k < 64; ++k) {
    const double r = guardedQuery(cx, f, rng, base + k);
    if (cellStraddles(cx, f, 0, 0, r)) {
      if (redraws) *redraws += k;
      return r;
    }
  }
  throw std::runtime_error("no root-straddling guarded query in 64 draws");
}

VertexField<double> makeTriField(const TriComplex& cx, const LevelsetOpts& o) {
  if (o.fn == "xcoord") {
    VertexField<double> f;
    f.values.resize(cx.vertexCount());
    for (std::uint32_t v = 0; v < cx.vertexCount(); ++v) {
      auto [us, vs] = cx.vertexScaled(v);
      // embedded x-coordinate: frame vector for the third corner is (1/2, sqrt3/2)
      f.values[v] = std::ldexp(double(us) + 0.5 * double(vs), -cx.depth());
    }
    return f;
  }
  HolderFieldResult res =
      randomHolderField(cx, o.seed, o.c, o.alpha, 1.0, 16, cx.depth() <= 7);
  return std::move(res.field);
}

void runLevelset(const LevelsetOpts& o) {
  if (o.depth < 1 || o.depth > 12)
    throw std::invalid_argument("depth must be in [1, 12]");
  const int nMax = o.nMax > 0 ? o.nMax : (o.depth + 1) / 2;
  if (2 * nMax - 1 > o.depth)
    throw std::invalid_argument("front statistics need depth >= 2*n_max - 1");

  TriComplex cx(o.depth);
  VertexField<double> f = makeTriField(cx, o);

  std::vector<double> rs;
  CounterRng rng(o.seed);
  if (o.r == "sweep") {
    // the dichotomy certificate assumes descent can start at the root, so the
    // sweep draws levels the whole-triangle cell straddles
    for (int k = 0; k < 8; ++k)
      rs.push_back(rootStraddlingQuery(cx, f, rng, 1000 + 128 * std::uint64_t(k),
                                       nullptr));
  } else {
    try {
      rs.push_back(std::stod(o.r));
    } catch (const std::exception&) {
      throw std::invalid_argument("--r takes a number or 'sweep'");
    }
  }

  Output out(o.out);
  out.os() << "r,n,front_size,max_kappa,highcond_mass,image_mass_bound,"
              "cert_lowbox,lowbox_slope\n";
  bool allCert = true;
  for (double r : rs) {
    const bool hypothesis = cellStraddles(cx, f, 0, 0, r);
    for (const FrontStatsRow& row : frontStats(cx, f, r, o.d1, nMax)) {
      out.os() << fmt17(r) << ',' << row.n << ',' << row.frontSize << ','
               << fmt17(row.maxKappaMeeting) << ',' << fmt17(row.highcondMass)
               << ',' << fmt17(row.imageMassBound) << ','
               << (row.certLowBox ? 1 : 0) << ',' << fmt17(row.lowBoxSlope)
               << "\n";
      // the certificate is only a theorem for levels the root straddles
      if (hypothesis && !row.certLowBox) allCert = false;
    }
  }
  if (!allCert)
    throw AuditBreach("mass dichotomy certificate failed on a tabulated front");
}

// ---------------------------------------------------------------------------
// verify suites

struct VerifyOpts {
  std::string suite;
  int trials = 1000;
  std::uint64_t seed = 7;
  int threads = 1;
  int depth = 0;  // 0 -> suite default
  double d1 = 0.45;
  int queries = 10;
  std::string out;
};

// static block partition over trial indices; every slot is written by exactly
// one thread, so reports are byte-identical for any thread count
template <class Fn>
void runTrials(int trials, int threads, const Fn& fn) {
  threads = std::max(1, std::min(threads, trials));
  if (threads == 1) {
    for (int t = 0; t < trials; ++t) fn(t);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(threads));
  for (int k = 0; k < threads; ++k) {
    const int lo = static_cast<int>(std::int64_t(trials) * k / threads);
    const int hi = static_cast<int>(std::int64_t(trials) * (k + 1) / threads);
    pool.emplace_back([lo, hi, &fn] {
      for (int t = lo; t < hi; ++t) fn(t);
    });
  }
  for (std::thread& th : pool) th.join();
}

void runVerifyCover(const VerifyOpts& o, Json& j) {
  const int depth = o.depth > 0 ? o.depth : 4;
  if (depth > 8) throw std::invalid_argument("cover suite depth must be <= 8");
  TriComplex tcx(depth);
  CrossModel cm(2);
  CrossComplex ccx(cm, 2);

  std::vector<std::size_t> tri(o.trials, 0), cross(o.trials, 0);
  CounterRng rng(o.seed);
  runTrials(o.trials, o.threads, [&](int t) {
    const CounterRng s = rng.stream(static_cast<std::uint64_t>(t));
    VertexField<double> f;
    f.values.resize(tcx.vertexCount());
    for (std::uint32_t v = 0; v < tcx.vertexCount(); ++v)
      f.values[v] = s.uniform01(v);
    tri[t] = coverAudit(tcx, f);

    VertexField<double> g;
    g.values.resize(ccx.vertexCount());
    for (std::uint32_t v = 0; v < ccx.vertexCount(); ++v)
      g.values[v] = s.uniform01((std::uint64_t(1) << 32) + v);
    cross[t] = coverAudit(ccx, g);
  });

  std::size_t bad = 0;
  for (int t = 0; t < o.trials; ++t) bad += tri[t] + cross[t];
  j["tri_depth"] = depth;
  j["cross_m"] = 2;
  j["cross_depth"] = 2;
  j["violations"] = bad;
  j["ok"] = bad == 0;
}

void runVerifyMu(const VerifyOpts& o, Json& j) {
  const int depth = o.depth > 0 ? o.depth : 6;
  if (depth > 10) throw std::invalid_argument("mu suite depth must be <= 10");
  TriComplex cx(depth);

  struct Slot {
    std::size_t nodes = 0, violations = 0;
    double maxRatio = 0;
    int redraws = 0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(o.trials));
  CounterRng rng(o.seed);
  const int queries = o.queries;
  runTrials(o.trials, o.threads, [&](int t) {
    const CounterRng s = rng.stream(static_cast<std::uint64_t>(t));
    const double alpha = 0.3 + 0.6 * s.uniform01(0);
    HolderFieldResult res =
        randomHolderField(cx, s.at(1), 1.0, alpha, 1.0, 16, false);
    Slot& slot = slots[t];
    for (int q = 0; q < queries; ++q) {
      const double r = rootStraddlingQuery(cx, res.field, s,
                                           10000 + 128 * std::uint64_t(q),
                                           &slot.redraws);
      const DescTree tree = descend(cx, res.field, r, 0, 0, depth);
      const MeasureTree mu = buildMeasure(tree);
      const MuKappaReport rep = muKappaAudit(cx, tree, mu);
      slot.nodes += rep.nodesChecked;
      slot.violations += rep.violations;
      slot.maxRatio = std::max(slot.maxRatio, rep.maxMuOverKappa);
    }
  });

  std::size_t nodes = 0, violations = 0;
  double maxRatio = 0;
  int redraws = 0;
  for (const Slot& s : slots) {
    nodes += s.nodes;
    violations += s.violations;
    maxRatio = std::max(maxRatio, s.maxRatio);
    redraws += s.redraws;
  }
  j["depth"] = depth;
  j["queries_per_trial"] = queries;
  j["nodes_checked"] = nodes;
  j["redraws"] = redraws;
  j["violations"] = violations;
  j["max_mu_over_kappa"] = maxRatio;
  j["ok"] = violations == 0;
}

void runVerifyFront(const VerifyOpts& o, Json& j) {
  const int depth = o.depth > 0 ? o.depth : 7;
  if (depth > 12) throw std::invalid_argument("front suite depth must be <= 12");
  const int nMax = (depth + 1) / 2;

  TriComplex cx(depth);
  struct Slot {
    bool cert = true;
    double slope = 0;
  };
  std::vector<Slot> slots(static_cast<std::size_t>(o.trials));
  CounterRng rng(o.seed);
  runTrials(o.trials, o.threads, [&](int t) {
    const CounterRng s = rng.stream(static_cast<std::uint64_t>(t));
    const double alpha = 0.3 + 0.6 * s.uniform01(0);
    HolderFieldResult res =
        randomHolderField(cx, s.at(1), 1.0, alpha, 1.0, 16, false);
    const double r = rootStraddlingQuery(cx, res.field, s, 10000, nullptr);
    const auto rows = frontStats(cx, res.field, r, o.d1, nMax);
    Slot& slot = slots[t];
    for (const FrontStatsRow& row : rows)
      if (!row.certLowBox) slot.cert = false;
    slot.slope = rows.back().lowBoxSlope;
  });

  bool cert = true;
  double slopeMin = 1e300, slopeMax = -1e300;
  for (const Slot& s : slots) {
    cert = cert && s.cert;
    slopeMin = std::min(slopeMin, s.slope);
    slopeMax = std::max(slopeMax, s.slope);
  }
  j["depth"] = depth;
  j["n_max"] = nMax;
  j["d1"] = o.d1;
  j["cert_ok"] = cert;
  j["slope_min"] = slopeMin;
  j["slope_max"] = slopeMax;
  j["ok"] = cert;
}

void runVerify(const VerifyOpts& o) {
  Json j;
  j["suite"] = o.suite;
  j["trials"] = o.trials;
  j["seed"] = o.seed;
  if (o.suite == "cover")
    runVerifyCover(o, j);
  else if (o.suite == "mu")
    runVerifyMu(o, j);
  else
    runVerifyFront(o, j);

  Output out(o.out);
  out.os() << j.dump(2) << "\n";
  if (!j["ok"].get<bool>())
    throw AuditBreach("suite '" + o.suite + "' found violations");
}

}  // namespace

void registerSier(CLI::App& app) {
  CLI::App* sier = app.add_subcommand(
      "sier", "triangle conductivity scheme, level-set fronts and audits");
  sier->require_subcommand(1);

  auto so = std::make_shared<SchemeOpts>();
  CLI::App* scheme = sier->add_subcommand(
      "scheme", "expand the conductivity scheme (atlas, histogram or self-check)");
  scheme->add_option("--depth", so->depth, "largest family to expand")
      ->required()
      ->check(CLI::Range(1, 9));
  scheme->add_flag("--histogram", so->histogram,
                   "emit the kappa-exponent census CSV instead of the atlas");
  scheme->add_flag("--verify", so->verify,
                   "check sizes, census, kappa walk and antichain cover; JSON report");
  scheme->add_option("--out", so->out, "output path (default stdout)");
  scheme->callback([so] { runScheme(*so); });

  auto lo = std::make_shared<LevelsetOpts>();
  CLI::App* levelset = sier->add_subcommand(
      "levelset", "per-level front statistics for a sampled field");
  levelset->add_option("--fn", lo->fn, "test field: xcoord or random")
      ->check(CLI::IsMember({"xcoord", "random"}));
  levelset->add_option("--depth", lo->depth, "sampling depth of the complex")
      ->required();
  levelset->add_option("--r", lo->r, "level value, or 'sweep' for 8 guarded draws");
  levelset->add_option("--d1", lo->d1, "conductivity cutoff exponent, in (0, 1/2]")
      ->check(CLI::Range(1e-9, 0.5));
  levelset->add_option("--alpha", lo->alpha, "exponent of the random field")
      ->check(CLI::Range(1e-9, 1.0));
  levelset->add_option("--seed", lo->seed, "random seed");
  levelset->add_option("--n-max", lo->nMax, "largest family (default (depth+1)/2)");
  levelset->add_option("--out", lo->out, "output path (default stdout)");
  levelset->callback([lo] { runLevelset(*lo); });

  auto vo = std::make_shared<VerifyOpts>();
  CLI::App* verify = sier->add_subcommand(
      "verify", "randomized audit suites with deterministic reports");
  verify->add_option("--suite", vo->suite, "cover, mu or front")
      ->required()
      ->check(CLI::IsMember({"cover", "mu", "front"}));
  verify->add_option("--trials", vo->trials, "number of random trials")
      ->check(CLI::Range(1, 1000000));
  verify->add_option("--seed", vo->seed, "random seed");
  verify->add_option("--threads", vo->threads, "worker threads (result is identical)")
      ->check(CLI::Range(1, 64));
  verify->add_option("--depth", vo->depth, "complex depth (default per suite)");
  verify->add_option("--d1", vo->d1, "cutoff exponent for the front suite")
      ->check(CLI::Range(1e-9, 0.5));
  verify->add_option("--queries", vo->queries, "guarded queries per trial (mu suite)")
      ->check(CLI::Range(1, 1000));
  verify->add_option("--out", vo->out, "output path (default stdout)");
  verify->callback([vo] { runVerify(*vo); });
}

}  // namespace holderlab::cli
