#include <CLI11.hpp>

#include <algorithm>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "holderlab/phi.hpp"
#include "holderlab/rng.hpp"

namespace holderlab::cli {
namespace {

std::vector<DigitString> splitBlocks(const std::string& s) {
  std::vector<DigitString> blocks;
  std::string cur;
  for (char ch : s) {
    if (ch == '|') {
      blocks.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  blocks.push_back(cur);
  return blocks;
}

// ---------------------------------------------------------------------------
// build

struct BuildOpts {
  int kstar = -1, w = -1;
  double alpha = -1, eps = 0.05;
  std::string out;
};

void describeWitness(Json& j, int kstar, int w, const BigInt& count) {
  const double lg = log2BigInt(count);
  j["kstar"] = kstar;
  j["w"] = w;
  j["count"] = count.str();
  j["log2_count"] = lg;
  j["alpha_cap"] = lg / (kstar + w);
  j["domain_ratio"] = double(w) / (kstar + w);
}

void runBuild(const BuildOpts& o) {
  Json j;
  if (o.kstar != -1 || o.w != -1) {
    if (o.kstar == -1 || o.w == -1)
      throw std::invalid_argument("--kstar and --w go together");
    if (o.alpha != -1)
      throw std::invalid_argument("give either --kstar/--w or --alpha/--eps");
    PhiWitness wit(o.kstar, o.w);
    describeWitness(j, o.kstar, o.w, wit.count());
  } else {
    if (o.alpha == -1)
      throw std::invalid_argument("need --alpha (optionally --eps), or --kstar/--w");
    OptimizedParams p = optimizeParams(o.alpha, o.eps);
    j["alpha"] = o.alpha;
    j["eps"] = o.eps;
    describeWitness(j, p.kstar, p.w, p.count);
  }
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// eval

struct EvalOpts {
  int kstar = 3, w = 1;
  std::string blocks;
  std::string out;
};

void runEval(const EvalOpts& o) {
  PhiWitness wit(o.kstar, o.w);
  const std::vector<DigitString> blocks = splitBlocks(o.blocks);
  const PhiWitness::Interval iv = wit.eval(blocks);

  Json j;
  j["kstar"] = o.kstar;
  j["w"] = o.w;
  j["blocks"] = iv.blocks;
  j["rank"] = iv.rank.str();
  j["den"] = iv.den.str();
  j["interval"] = Json::array({iv.rank.str() + "/" + iv.den.str(),
                               BigInt(iv.rank + 1).str() + "/" + iv.den.str()});
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// audit

struct AuditOpts {
  int kstar = 3, w = 1;
  bool holder = false, levels = false;
  int depth = 3;
  double alpha = -1;
  int queries = 100;
  std::uint64_t seed = 1;
  std::string out;
};

void runAudit(const AuditOpts& o) {
  if (o.holder == o.levels)
    throw std::invalid_argument("pick exactly one of --holder / --levels");
  PhiWitness wit(o.kstar, o.w);

  Json j;
  j["kstar"] = o.kstar;
  j["w"] = o.w;

  if (o.holder) {
    const double cap = log2BigInt(wit.count()) / (o.kstar + o.w);
    const double alpha = o.alpha > 0 ? o.alpha : cap;
    const PhiHolderReport rep = phiHolderAudit(wit, alpha, o.depth);
    j["mode"] = "holder";
    j["alpha"] = alpha;
    j["depth_blocks"] = o.depth;
    j["vertices"] = rep.vertices;
    j["max_ratio"] = rep.maxRatio;
    j["bound"] = rep.bound;
    j["pass"] = rep.pass;
    Output out(o.out);
    out.os() << j.dump(2) << "\n";
    if (!rep.pass)
      throw AuditBreach("sampled ratio exceeds the certified constant");
    return;
  }

  const std::uint64_t N = wit.count().convert_to<std::uint64_t>();
  const int blocksNeeded =
      (o.depth * (o.kstar + o.w) + o.kstar - 1) / o.kstar;
  CounterRng rng(o.seed);
  std::uint64_t maxCells = 0;
  BigInt bound;
  bool pass = true;
  for (int q = 0; q < o.queries; ++q) {
    const CounterRng s = rng.stream(static_cast<std::uint64_t>(q));
    std::vector<int> digits(static_cast<std::size_t>(blocksNeeded));
    for (int i = 0; i < blocksNeeded; ++i)
      digits[i] = static_cast<int>(s.at(static_cast<std::uint64_t>(i)) % N);
    const std::vector<DigitString> chain = chainFromRankDigits(wit, digits);
    const LevelCellReport rep = phiLevelCellCount(wit, chain, o.depth);
    maxCells = std::max(maxCells, rep.cells);
    bound = rep.bound;
    if (BigInt(rep.cells) > rep.bound) pass = false;
  }
  j["mode"] = "levels";
  j["n"] = o.depth;
  j["queries"] = o.queries;
  j["max_cells"] = maxCells;
  j["bound"] = bound.str();
  j["pass"] = pass;
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
  if (!pass) throw AuditBreach("level-set cell count exceeds the certified bound");
}

}  // namespace

void registerPhi(CLI::App& app) {
  CLI::App* phi = app.add_subcommand(
      "phi", "block-coded Hölder witness on the triangle");
  phi->require_subcommand(1);

  auto bo = std::make_shared<BuildOpts>();
  CLI::App* build = phi->add_subcommand(
      "build", "enumerate admissible blocks for given (kstar, w) or optimize them");
  build->add_option("--kstar", bo->kstar, "block length")->check(CLI::Range(1, 24));
  build->add_option("--w", bo->w, "digit budget per block")->check(CLI::Range(0, 24));
  build->add_option("--alpha", bo->alpha, "target exponent for optimization")
      ->check(CLI::Range(1e-9, 1.0));
  build->add_option("--eps", bo->eps, "slack on the domain ratio")
      ->check(CLI::Range(0.0, 1.0));
  build->add_option("--out", bo->out, "output path (default stdout)");
  build->callback([bo] { runBuild(*bo); });

  auto eo = std::make_shared<EvalOpts>();
  CLI::App* eval = phi->add_subcommand(
      "eval", "exact image interval of a cylinder given its block chain");
  eval->add_option("--kstar", eo->kstar, "block length")->check(CLI::Range(1, 24));
  eval->add_option("--w", eo->w, "digit budget per block")->check(CLI::Range(0, 24));
  eval->add_option("--blocks", eo->blocks, "pipe-separated blocks, e.g. \"033|233\"")
      ->required();
  eval->add_option("--out", eo->out, "output path (default stdout)");
  eval->callback([eo] { runEval(*eo); });

  auto ao = std::make_shared<AuditOpts>();
  CLI::App* audit = phi->add_subcommand(
      "audit", "certify the witness: Hölder ratio or level-set cell counts");
  audit->add_flag("--holder", ao->holder, "vertex-pair Hölder ratio audit");
  audit->add_flag("--levels", ao->levels, "level-set cell-count audit");
  audit->add_option("--kstar", ao->kstar, "block length")->check(CLI::Range(1, 24));
  audit->add_option("--w", ao->w, "digit budget per block")->check(CLI::Range(0, 24));
  audit->add_option("--depth", ao->depth,
                    "block depth (holder) or level index n (levels)")
      ->check(CLI::Range(1, 16));
  audit->add_option("--alpha", ao->alpha,
                    "exponent to certify (default log2(N)/(kstar+w))");
  audit->add_option("--queries", ao->queries, "random chains for the levels audit")
      ->check(CLI::Range(1, 100000));
  audit->add_option("--seed", ao->seed, "random seed");
  audit->add_option("--out", ao->out, "output path (default stdout)");
  audit->callback([ao] { runAudit(*ao); });
}

}  // namespace holderlab::cli
