#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "holderlab/cross.hpp"
#include "holderlab/rng.hpp"

namespace holderlab::cli {
namespace {

std::vector<int> parseDigits(const std::string& s) {
  std::vector<int> digits;
  std::stringstream in(s);
  std::string tok;
  while (std::getline(in, tok, ',')) {
    if (tok.empty()) continue;
    digits.push_back(std::stoi(tok));
  }
  if (digits.empty()) throw std::invalid_argument("no digits given");
  return digits;
}

// ---------------------------------------------------------------------------
// build / classify

struct BuildOpts {
  int m = 3;
  std::string out;
};

void runBuild(const BuildOpts& o) {
  CrossModel model(o.m);
  Output out(o.out);
  model.writeJson(out.os());
}

struct ClassifyOpts {
  int m = 3;
  int L = 4;
  std::string out;
};

void runClassify(const ClassifyOpts& o) {
  CrossModel model(o.m);
  Output out(o.out);
  out.os() << "level,square,path,class,depth,kappa\n";
  const auto& squares = model.squares();
  for (std::size_t k = 0; k < squares.size(); ++k) {
    const auto [i, j] = squares[k];
    const int type = model.typeOf(i, j, o.L);
    out.os() << 1 << ',' << i << '-' << j << ',' << k << ',' << type << ','
             << model.blockDepth(i, j) << ','
             << CrossModel::kappaFactor(type, o.L).str() << "\n";
  }
}

// ---------------------------------------------------------------------------
// phi

struct PhiOpts {
  int m = 3;
  std::string x;
  std::string out;
};

void runPhi(const PhiOpts& o) {
  const std::vector<int> digits = parseDigits(o.x);
  for (int d : digits)
    if (d < 0 || d >= (1 << o.m))
      throw std::invalid_argument("digits must lie in [0, 2^m)");
  const Rational value = crossPhiEval(o.m, digits);

  Json j;
  j["m"] = o.m;
  j["digits"] = digits;
  j["value"] = value.str();
  j["value_float"] = value.convert_to<double>();
  j["holder_bound"] = crossPhiHolderBound(o.m);
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
}

// ---------------------------------------------------------------------------
// conductivity audit

struct AuditOpts {
  int m = 3;
  int L = 4;
  int trials = 100;
  int depth = 2;
  std::uint64_t seed = 1;
  std::string kind = "cycle";
  std::string out;
};

CrossFieldKind kindAt(const std::string& kind, int t) {
  if (kind == "x") return CrossFieldKind::RampX;
  if (kind == "y") return CrossFieldKind::RampY;
  if (kind == "phi") return CrossFieldKind::PhiRamp;
  switch (t % 3) {
    case 0: return CrossFieldKind::RampX;
    case 1: return CrossFieldKind::RampY;
    default: return CrossFieldKind::PhiRamp;
  }
}

void runAudit(const AuditOpts& o) {
  CrossModel model(o.m);
  CrossComplex cx(model, o.depth);
  CounterRng rng(o.seed);

  std::size_t parents = 0, comparisons = 0, violations = 0;
  double minSlack = std::numeric_limits<double>::infinity();
  for (int t = 0; t < o.trials; ++t) {
    const VertexField<double> f =
        crossTestField(cx, kindAt(o.kind, t), rng, static_cast<std::uint64_t>(t));
    const double r = crossGuardedQuery(cx, f, rng, static_cast<std::uint64_t>(t));
    const CrossConductivityReport rep = crossConductivityAudit(model, cx, f, r, o.L);
    parents += rep.parentsChecked;
    comparisons += rep.comparisons;
    violations += rep.violations;
    if (rep.comparisons > 0) minSlack = std::min(minSlack, rep.minSlack);
  }
  if (!std::isfinite(minSlack)) minSlack = 0;

  Json j;
  j["m"] = o.m;
  j["L"] = o.L;
  j["depth"] = o.depth;
  j["trials"] = o.trials;
  j["kind"] = o.kind;
  j["parents_checked"] = parents;
  j["comparisons"] = comparisons;
  j["violations"] = violations;
  j["min_slack"] = minSlack;
  j["ok"] = violations == 0;
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
  if (violations != 0)
    throw AuditBreach("descendant conductivity fell below a parent");
}

// ---------------------------------------------------------------------------
// transition

struct TransitionOpts {
  int m = 4;
  int L = 16;
  double alpha = 0.9;
  double beta = -1;
  double eps = 0.01;
  double K = -1;
  std::string out;
};

void runTransition(const TransitionOpts& o) {
  const TransitionRecord rec = transitionBounds(o.m, o.L, o.alpha);
  CrossModel model(o.m);
  const CrossTypeCounts counts = crossTypeCounts(model, o.L);

  Json j;
  j["m"] = rec.m;
  j["L"] = rec.L;
  j["alpha"] = rec.alpha;
  j["feasible"] = rec.feasible;
  j["threshold_L"] = feasibilityThresholdL();
  j["alpha1"] = rec.alpha1;
  j["range_nonempty"] = rec.rangeNonempty;
  j["beta_low"] = rec.betaLow;
  j["beta_high"] = rec.betaHigh;
  j["d_star_lower"] = rec.dStarLower;
  j["small_alpha_dim"] = rec.smallAlphaDim;
  j["a_L"] = counts.aL;
  j["b_L"] = counts.bL;
  if (rec.feasible && rec.rangeNonempty) {
    const double beta = o.beta > 0 ? o.beta : 0.5 * (rec.betaLow + rec.betaHigh);
    const double K = o.K >= 0 ? o.K : static_cast<double>(counts.t2);
    j["beta"] = beta;
    j["eps"] = o.eps;
    j["K"] = K;
    j["c_exponent"] = crossCExponent(o.m, o.L, o.alpha, beta, o.eps, counts.aL, K);
  }
  Output out(o.out);
  out.os() << j.dump(2) << "\n";
}

}  // namespace

void registerCross(CLI::App& app) {
  CLI::App* cross = app.add_subcommand(
      "cross", "plus-shaped carpet: model, witness, audits and transition bounds");
  cross->require_subcommand(1);

  auto bo = std::make_shared<BuildOpts>();
  CLI::App* build = cross->add_subcommand("build", "emit the retained-square model as JSON");
  build->add_option("--m", bo->m, "refinement exponent (side 2^m)")
      ->required()
      ->check(CLI::Range(2, 12));
  build->add_option("--out", bo->out, "output path (default stdout)");
  build->callback([bo] { runBuild(*bo); });

  auto co = std::make_shared<ClassifyOpts>();
  CLI::App* classify = cross->add_subcommand(
      "classify", "per-square type, block depth and conductivity factor (CSV)");
  classify->add_option("--m", co->m, "refinement exponent")
      ->required()
      ->check(CLI::Range(2, 12));
  classify->add_option("--L", co->L, "deep-block cutoff parameter")
      ->required()
      ->check(CLI::Range(2, 1000000));
  classify->add_option("--out", co->out, "output path (default stdout)");
  classify->callback([co] { runClassify(*co); });

  auto po = std::make_shared<PhiOpts>();
  CLI::App* phi = cross->add_subcommand(
      "phi", "exact witness value at a base-2^m digit string");
  phi->add_option("--m", po->m, "refinement exponent")
      ->required()
      ->check(CLI::Range(2, 12));
  phi->add_option("--x", po->x, "comma-separated digits, e.g. \"3,4,3\"")->required();
  phi->add_option("--out", po->out, "output path (default stdout)");
  phi->callback([po] { runPhi(*po); });

  auto ao = std::make_shared<AuditOpts>();
  CLI::App* audit = cross->add_subcommand(
      "audit", "descendant-conductivity audit over random test fields");
  audit->add_option("--m", ao->m, "refinement exponent")
      ->required()
      ->check(CLI::Range(2, 6));
  audit->add_option("--L", ao->L, "deep-block cutoff parameter")
      ->required()
      ->check(CLI::Range(2, 1000000));
  audit->add_option("--trials", ao->trials, "number of random fields")
      ->check(CLI::Range(1, 1000000));
  audit->add_option("--depth", ao->depth, "sampling depth of the complex")
      ->check(CLI::Range(1, 6));
  audit->add_option("--seed", ao->seed, "random seed");
  audit->add_option("--kind", ao->kind, "field family: x, y, phi or cycle")
      ->check(CLI::IsMember({"x", "y", "phi", "cycle"}));
  audit->add_option("--out", ao->out, "output path (default stdout)");
  audit->callback([ao] { runAudit(*ao); });

  auto to = std::make_shared<TransitionOpts>();
  CLI::App* transition = cross->add_subcommand(
      "transition", "phase-transition constants for the level-set dimension");
  transition->add_option("--m", to->m, "refinement exponent")
      ->required()
      ->check(CLI::Range(2, 12));
  transition->add_option("--L", to->L, "deep-block cutoff parameter")
      ->required()
      ->check(CLI::Range(2, 1000000));
  transition->add_option("--alpha", to->alpha, "Hölder exponent")
      ->required()
      ->check(CLI::Range(1e-9, 1.0));
  transition->add_option("--beta", to->beta, "series exponent (default midpoint)");
  transition->add_option("--eps", to->eps, "series slack")->check(CLI::Range(0.0, 1.0));
  transition->add_option("--K", to->K, "additive block constant (default type-2 count)");
  transition->add_option("--out", to->out, "output path (default stdout)");
  transition->callback([to] { runTransition(*to); });
}

}  // namespace holderlab::cli
