#pragma once

#include <string>
#include <utility>
#include <vector>

#include "uwloc/config.hpp"
#include "uwloc/sweep.hpp"

namespace uwloc {

// Canned experiment presets. Each binds a frozen scenario + sweep to a
// machine-checkable trend assertion and reproduces one reference plot.
enum class FigureId { fig3, fig4, fig5, fig6, fig7, fig8, fig9 };

std::string to_string(FigureId id);
// Accepts "fig3".."fig9"; throws std::invalid_argument listing valid names.
FigureId figure_from_string(const std::string& name);

// The frozen configuration(s) behind one preset. Most presets run a single
// sweep; fig9 runs a sparse and a dense deployment over the same range grid.
// Each entry is (label, config); the label names output subdirectories when
// there is more than one sweep.
std::vector<std::pair<std::string, AppConfig>> recipe_configs(FigureId id);

struct RecipeCheck {
  std::string name;
  bool passed = false;
  std::string detail;  // measured-vs-expected, human readable
};

struct RecipeReport {
  FigureId id = FigureId::fig3;
  bool passed = false;  // conjunction of all checks
  std::vector<RecipeCheck> checks;
  std::vector<std::string> artifacts;  // files written under out_dir
  // Aggregates of every sweep the recipe ran, keyed by the config label.
  std::vector<std::pair<std::string, std::vector<PointAggregate>>> sweeps;
};

// Runs the preset end to end: sweeps, writes results.csv + plot data under
// out_dir, evaluates the trend checks. Deterministic for fixed configs.
RecipeReport run_recipe(FigureId id, const std::string& out_dir,
                        unsigned threads = 1);

// Knee of a decreasing-then-flat curve: the first index whose remaining
// improvement (value minus the minimum over later points) is below
// `rel_tol` of the value itself. Returns the last index if none qualifies.
std::size_t saturation_knee(const std::vector<double>& values, double rel_tol);

}  // namespace uwloc
