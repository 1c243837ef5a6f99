// Python surface of the laboratory: curve evaluation, the conductivity
// census, level-set audits on the triangle, the increasing-set witness and
// the cross-fractal calculators. Exact integers cross the boundary as python
// ints, exact rationals as "p/q" strings plus a float convenience value.
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <holderlab/cross.hpp>
#include <holderlab/curves.hpp>
#include <holderlab/levelset.hpp>
#include <holderlab/phi.hpp>
#include <holderlab/report.hpp>
#include <holderlab/rng.hpp>
#include <holderlab/scheme.hpp>
#include <holderlab/tri_complex.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace py = pybind11;
using namespace holderlab;

namespace {

py::int_ toPyInt(const BigInt& x) {
  return py::cast<py::int_>(py::module_::import("builtins").attr("int")(x.str()));
}

std::string ratStr(const Rational& r) {
  std::ostringstream os;
  os << r;
  return os.str();
}

BoundKind kindOf(const std::string& name) {
  if (name == "lower") return BoundKind::Lower;
  if (name == "lower_box") return BoundKind::LowerBox;
  if (name == "upper") return BoundKind::Upper;
  throw std::invalid_argument("kind must be lower, lower_box or upper");
}

VertexField<double> fieldOf(const TriComplex& cx, const std::vector<double>& values) {
  if (values.size() != cx.vertexCount())
    throw std::invalid_argument("values must list one number per vertex");
  VertexField<double> f;
  f.values = values;
  return f;
}

VertexField<double> fieldOf(const CrossComplex& cx, const std::vector<double>& values) {
  if (values.size() != cx.vertexCount())
    throw std::invalid_argument("values must list one number per vertex");
  VertexField<double> f;
  f.values = values;
  return f;
}

}  // namespace

PYBIND11_MODULE(_core, mod) {
  mod.doc() = "level-set geometry of Hölder functions on self-similar sets";

  // ---- bound curves --------------------------------------------------------
  mod.def("domain_max", [](const std::string& k) { return domainMax(kindOf(k)); },
          py::arg("kind"));
  mod.def("eval_h", [](const std::string& k, double t) { return evalH(kindOf(k), t); },
          py::arg("kind"), py::arg("t"));
  mod.def("invert_h",
          [](const std::string& k, double alpha, double tol) {
            return invertH(kindOf(k), alpha, tol);
          },
          py::arg("kind"), py::arg("alpha"), py::arg("tol") = 1e-12);
  mod.def("exponent_c", &exponentC, py::arg("d1"), py::arg("alpha"));
  mod.def("exponent_c_box", &exponentCBox, py::arg("d1"), py::arg("alpha"));
  mod.def("series_log_m", &seriesLogM, py::arg("n"), py::arg("d1"), py::arg("alpha"));
  mod.def("series_log_m_box", &seriesLogMBox, py::arg("n"), py::arg("d1"),
          py::arg("alpha"));
  mod.def("asymptotic_gap", &asymptoticGap, py::arg("alpha"));
  mod.def("curve_table",
          [](double alphaMin, double alphaMax, int steps, bool logGrid) {
            py::list out;
            for (const CurveRow& row : curveTable(alphaMin, alphaMax, steps, logGrid)) {
              py::dict d;
              d["alpha"] = row.alpha;
              d["lower_raw"] = row.lowerRaw;
              d["lower_hausdorff"] = row.lowerHausdorff;
              d["lower_box"] = row.lowerBox;
              d["upper_raw"] = row.upperRaw;
              d["upper"] = row.upper;
              out.append(d);
            }
            return out;
          },
          py::arg("alpha_min"), py::arg("alpha_max"), py::arg("steps"),
          py::arg("log_grid") = false);
  mod.def("curve_csv",
          [](double alphaMin, double alphaMax, int steps, bool logGrid) {
            std::ostringstream os;
            writeCurveCsv(os, curveTable(alphaMin, alphaMax, steps, logGrid));
            return os.str();
          },
          py::arg("alpha_min"), py::arg("alpha_max"), py::arg("steps"),
          py::arg("log_grid") = false);

  // ---- conductivity scheme -------------------------------------------------
  mod.def("per_root_census", [](int n) {
    py::list out;
    for (const BigInt& c : perRootCensus(n)) out.append(toPyInt(c));
    return out;
  }, py::arg("n"));
  mod.def("family_size", [](int n) { return toPyInt(familySize(n)); }, py::arg("n"));
  mod.def("binomial", [](int n, int k) { return toPyInt(binomial(n, k)); },
          py::arg("n"), py::arg("k"));
  mod.def("cover_audit_exhaustive", &coverAuditExhaustive, py::arg("n"));

  // ---- triangle complex and level-set audits -------------------------------
  py::class_<TriComplex>(mod, "TriComplex")
      .def(py::init<int>(), py::arg("depth"))
      .def_property_readonly("depth", &TriComplex::depth)
      .def_property_readonly("vertex_count", &TriComplex::vertexCount)
      .def("cell_count", &TriComplex::cellCount, py::arg("level"));

  mod.def("random_holder_field",
          [](const TriComplex& cx, std::uint64_t seed, double c, double alpha,
             double perturb, int retries, bool audit) {
            HolderFieldResult res =
                randomHolderField(cx, seed, c, alpha, perturb, retries, audit);
            py::dict d;
            d["values"] = res.field.values;
            d["c"] = res.meta.c;
            d["alpha"] = res.meta.alpha;
            d["max_ratio"] = res.maxRatio;
            d["retries"] = res.retries;
            return d;
          },
          py::arg("cx"), py::arg("seed"), py::arg("c"), py::arg("alpha"),
          py::arg("perturb") = 1.0, py::arg("retries") = 16, py::arg("audit") = true);
  mod.def("guarded_query",
          [](const TriComplex& cx, const std::vector<double>& values,
             std::uint64_t seed, std::uint64_t counter) {
            return guardedQuery(cx, fieldOf(cx, values), CounterRng(seed), counter);
          },
          py::arg("cx"), py::arg("values"), py::arg("seed"), py::arg("counter") = 0);
  mod.def("mu_kappa_audit",
          [](const TriComplex& cx, const std::vector<double>& values, double r) {
            const VertexField<double> f = fieldOf(cx, values);
            const DescTree tree = descend(cx, f, r, 0, 0, cx.depth());
            const MeasureTree mu = buildMeasure(tree);
            const MuKappaReport rep = muKappaAudit(cx, tree, mu);
            py::dict d;
            d["nodes_checked"] = rep.nodesChecked;
            d["violations"] = rep.violations;
            d["max_mu_over_kappa"] = rep.maxMuOverKappa;
            return d;
          },
          py::arg("cx"), py::arg("values"), py::arg("r"));
  mod.def("front_stats",
          [](const TriComplex& cx, const std::vector<double>& values, double r,
             double d1, int nMax) {
            py::list out;
            for (const FrontStatsRow& row :
                 frontStats(cx, fieldOf(cx, values), r, d1, nMax)) {
              py::dict d;
              d["n"] = row.n;
              d["front_size"] = row.frontSize;
              d["max_kappa"] = row.maxKappaMeeting;
              d["highcond_mass"] = row.highcondMass;
              d["image_mass_bound"] = row.imageMassBound;
              d["cert_lowbox"] = row.certLowBox;
              d["lowbox_slope"] = row.lowBoxSlope;
              out.append(d);
            }
            return out;
          },
          py::arg("cx"), py::arg("values"), py::arg("r"), py::arg("d1"),
          py::arg("n_max"));

  // ---- increasing-set witness ----------------------------------------------
  py::class_<PhiWitness>(mod, "PhiWitness")
      .def(py::init<int, int, std::size_t>(), py::arg("kstar"), py::arg("w"),
           py::arg("enum_cap") = std::size_t(200000))
      .def_property_readonly("kstar", &PhiWitness::kstar)
      .def_property_readonly("w", &PhiWitness::w)
      .def_property_readonly("count",
                             [](const PhiWitness& w) { return toPyInt(w.count()); })
      .def("sorted", &PhiWitness::sorted, py::arg("parity"))
      .def("is_admissible", &PhiWitness::isAdmissible, py::arg("block"))
      .def("eval",
           [](const PhiWitness& w, const std::vector<DigitString>& blocks) {
             const PhiWitness::Interval iv = w.eval(blocks);
             py::dict d;
             d["rank"] = toPyInt(iv.rank);
             d["blocks"] = iv.blocks;
             d["den"] = toPyInt(iv.den);
             d["interval"] = iv.str();
             return d;
           },
           py::arg("blocks"))
      .def("phi_of_chain",
           [](const PhiWitness& w, const DigitString& head) {
             const Rational v = w.phiOfChain(head);
             return py::make_tuple(ratStr(v), v.convert_to<double>());
           },
           py::arg("head"))
      .def("extend_constant",
           [](const PhiWitness& w, const DigitString& prefix) {
             const Rational v = w.extendConstant(prefix);
             return py::make_tuple(ratStr(v), v.convert_to<double>());
           },
           py::arg("prefix"));

  mod.def("admissible_count",
          [](int kstar, int w) { return toPyInt(admissibleCount(kstar, w)); },
          py::arg("kstar"), py::arg("w"));
  mod.def("phi_holder_audit",
          [](const PhiWitness& wit, double alpha, int depthBlocks) {
            const PhiHolderReport rep = phiHolderAudit(wit, alpha, depthBlocks);
            py::dict d;
            d["max_ratio"] = rep.maxRatio;
            d["bound"] = rep.bound;
            d["vertices"] = rep.vertices;
            d["pass"] = rep.pass;
            return d;
          },
          py::arg("wit"), py::arg("alpha"), py::arg("depth_blocks"));
  mod.def("chain_from_rank_digits", &chainFromRankDigits, py::arg("wit"),
          py::arg("digits"));
  mod.def("phi_level_cells",
          [](const PhiWitness& wit, const std::vector<DigitString>& chain, int n) {
            const LevelCellReport rep = phiLevelCellCount(wit, chain, n);
            py::dict d;
            d["n"] = rep.n;
            d["cells"] = rep.cells;
            d["bound"] = toPyInt(rep.bound);
            return d;
          },
          py::arg("wit"), py::arg("chain"), py::arg("n"));
  mod.def("optimize_params",
          [](double alpha, double eps) {
            const OptimizedParams p = optimizeParams(alpha, eps);
            py::dict d;
            d["kstar"] = p.kstar;
            d["w"] = p.w;
            d["count"] = toPyInt(p.count);
            d["log2_count"] = p.log2Count;
            return d;
          },
          py::arg("alpha"), py::arg("eps"));

  // ---- cross fractal ---------------------------------------------------------
  py::class_<CrossModel>(mod, "CrossModel")
      .def(py::init<int>(), py::arg("m"))
      .def_property_readonly("m", &CrossModel::m)
      .def_property_readonly("side", &CrossModel::side)
      .def_property_readonly("p", &CrossModel::p)
      .def_property_readonly("squares", &CrossModel::squares)
      .def("retained", &CrossModel::retained, py::arg("i"), py::arg("j"))
      .def("type_of", &CrossModel::typeOf, py::arg("i"), py::arg("j"), py::arg("L"))
      .def("json", [](const CrossModel& m) {
        std::ostringstream os;
        m.writeJson(os);
        return os.str();
      });
  mod.def("p_formula", &CrossModel::pFormula, py::arg("m"));
  mod.def("cross_type_counts",
          [](const CrossModel& model, int L) {
            const CrossTypeCounts c = crossTypeCounts(model, L);
            py::dict d;
            d["t1"] = c.t1;
            d["t2"] = c.t2;
            d["t3"] = c.t3;
            d["t4"] = c.t4;
            d["thin"] = c.thin;
            d["a_L"] = c.aL;
            d["b_L"] = c.bL;
            return d;
          },
          py::arg("model"), py::arg("L"));
  mod.def("cross_phi",
          [](int m, const std::vector<int>& digits) {
            const Rational v = crossPhiEval(m, digits);
            return py::make_tuple(ratStr(v), v.convert_to<double>());
          },
          py::arg("m"), py::arg("digits"));
  mod.def("cross_phi_holder_bound", &crossPhiHolderBound, py::arg("m"));
  mod.def("level_section_count",
          [](const CrossModel& model, const std::vector<int>& bits, int n) {
            const SectionCountReport rep = levelSectionCount(model, bits, n);
            py::dict d;
            d["counts"] = rep.counts;
            d["slope"] = rep.slope;
            return d;
          },
          py::arg("model"), py::arg("bits"), py::arg("n"));
  mod.def("transition_bounds",
          [](int m, int L, double alpha) {
            const TransitionRecord rec = transitionBounds(m, L, alpha);
            py::dict d;
            d["m"] = rec.m;
            d["L"] = rec.L;
            d["alpha"] = rec.alpha;
            d["feasible"] = rec.feasible;
            d["alpha1"] = rec.alpha1;
            d["range_nonempty"] = rec.rangeNonempty;
            d["beta_low"] = rec.betaLow;
            d["beta_high"] = rec.betaHigh;
            d["d_star_lower"] = rec.dStarLower;
            d["small_alpha_dim"] = rec.smallAlphaDim;
            return d;
          },
          py::arg("m"), py::arg("L"), py::arg("alpha"));
  mod.def("feasibility_threshold_l", &feasibilityThresholdL);
  mod.def("cross_c_exponent", &crossCExponent, py::arg("m"), py::arg("L"),
          py::arg("alpha"), py::arg("beta"), py::arg("eps"), py::arg("a_l"),
          py::arg("k"));

  // ---- misc ------------------------------------------------------------------
  mod.def("fmt17", &fmt17, py::arg("x"));
}
