#include <CLI11.hpp>

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "common.hpp"
#include "holderlab/curves.hpp"
#include "holderlab/report.hpp"

namespace holderlab::cli {
namespace {

struct CurveOpts {
  double alphaMin = 0;
  double alphaMax = 0;
  int steps = 0;
  bool logGrid = false;
  std::string format = "csv";
  std::string out;
};

void runCurve(const CurveOpts& o) {
  if (!(o.alphaMin > 0 && o.alphaMin < o.alphaMax && o.alphaMax < 1))
    throw std::invalid_argument("need 0 < alpha-min < alpha-max < 1");
  std::vector<CurveRow> rows = curveTable(o.alphaMin, o.alphaMax, o.steps, o.logGrid);

  Output out(o.out);
  if (o.format == "csv") {
    writeCurveCsv(out.os(), rows);
  } else {
    Json grid;
    grid["alpha_min"] = o.alphaMin;
    grid["alpha_max"] = o.alphaMax;
    grid["steps"] = o.steps;
    grid["log_grid"] = o.logGrid;
    Json table = Json::array();
    for (const CurveRow& r : rows) {
      Json row;
      row["alpha"] = r.alpha;
      row["lower_raw"] = r.lowerRaw;
      row["lower_hausdorff"] = r.lowerHausdorff;
      row["lower_box"] = r.lowerBox;
      row["upper_raw"] = r.upperRaw;
      row["upper"] = r.upper;
      table.push_back(std::move(row));
    }
    Json j;
    j["grid"] = std::move(grid);
    j["invert_tolerance"] = 1e-12;
    j["rows"] = std::move(table);
    out.os() << j.dump(2) << "\n";
  }

  if (!curveInvariantsHold(rows)) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (!curveInvariantsHold({rows[i]}))
        throw AuditBreach("bound ordering violated at row " + std::to_string(i) +
                          " (alpha = " + fmt17(rows[i].alpha) + ")");
    throw AuditBreach("bound ordering violated");
  }
}

}  // namespace

void registerBounds(CLI::App& app) {
  CLI::App* bounds =
      app.add_subcommand("bounds", "dimension-bound curves for level sets");
  bounds->require_subcommand(1);

  auto o = std::make_shared<CurveOpts>();
  CLI::App* curve = bounds->add_subcommand(
      "curve", "tabulate the lower/box/upper bound curves against alpha");
  curve->add_option("--alpha-min", o->alphaMin, "left end of the alpha grid")
      ->required();
  curve->add_option("--alpha-max", o->alphaMax, "right end of the alpha grid")
      ->required();
  curve->add_option("--steps", o->steps, "number of grid intervals (steps+1 rows)")
      ->required()
      ->check(CLI::Range(1, 1000000));
  curve->add_flag("--log-grid", o->logGrid, "grid geometric in alpha instead of linear");
  curve->add_option("--format", o->format, "csv or json (default csv)")
      ->check(CLI::IsMember({"csv", "json"}));
  curve->add_option("--out", o->out, "output path (default stdout)");
  curve->callback([o] { runCurve(*o); });
}

}  // namespace holderlab::cli
