#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "uwloc/config.hpp"
#include "uwloc/crlb.hpp"
#include "uwloc/network.hpp"

namespace uwloc {

// One (sweep point, trial, method) outcome. Failed trials keep their rows
// (status "failed", metrics NaN) so row counts stay point x trial x method.
struct SweepRow {
  double axis_value = 0.0;
  std::uint64_t trial_seed = 0;
  std::string method;
  double rmse_m = std::numeric_limits<double>::quiet_NaN();
  double h_crlb_m = std::numeric_limits<double>::quiet_NaN();
  double stress = std::numeric_limits<double>::quiet_NaN();
  double energy_j = std::numeric_limits<double>::quiet_NaN();
  double energy_error_product = std::numeric_limits<double>::quiet_NaN();
  std::string status = "ok";
  std::string reason;  // failure or diagnostic note; commas become ';' in CSV
};

// True poses plus one method's estimates, for 3D scatter reproduction.
struct ScatterSet {
  std::string method;
  std::vector<NodePose> nodes;
  Eigen::MatrixXd estimated;  // K x 3
};

struct SweepResult {
  std::vector<SweepRow> rows;  // point-major, then trial, then method order
  std::vector<ScatterSet> scatter;
};

// Scenario for one sweep point. noise_variance sets the flat variance (or
// epsilon in distance mode); n_nodes holds anchors/relays fixed and resizes
// the sensor count; n_anchors holds the total fixed; tx_range sets the radio
// range. Throws std::invalid_argument for non-integral counts or layouts
// with no sensors left.
ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value);

// Position-error lower bound for one synthesized scenario, computed from the
// exact per-pair variances the synthesis uses (no floor). All-zero variances
// mean every range is exact and the bound is zero. Throws singular_fim_error
// when the information matrix cannot be inverted.
CrlbReport observation_bound(const ScenarioConfig& cfg,
                             const std::vector<NodePose>& nodes,
                             const std::vector<RangeObservation>& observations);

// Convenience wrapper that generates and synthesizes the scenario first.
CrlbReport scenario_crlb(const ScenarioConfig& cfg);

// One full pipeline pass at a fixed scenario: synthesize, complete, localize
// with each method, score. Never throws; failures come back in the rows.
// When `scatter` is non-null the per-method estimates are appended to it.
std::vector<SweepRow> run_trial(const ScenarioConfig& cfg,
                                const EnergyParams& energy,
                                const std::vector<std::string>& methods,
                                double axis_value, std::uint64_t trial_seed,
                                std::vector<ScatterSet>* scatter = nullptr);

// Full sweep on a bounded worker pool (threads = 0 picks the hardware count).
// Rows are merged in (point, trial, method) order regardless of scheduling,
// and trial seeds derive only from (config seed, point index, trial index),
// so equal inputs give byte-identical CSV output. capture_scatter records the
// estimates of the first point's first trial.
SweepResult run_sweep(const AppConfig& cfg, unsigned threads = 1,
                      bool capture_scatter = false);

// Header + one line per row; floats at 9 significant digits.
void emit_csv(const SweepResult& result, const std::string& path);

// Reads a file emitted by emit_csv back into rows.
std::vector<SweepRow> parse_csv(const std::string& path);

// Per (axis value, method) statistics over the trials that succeeded.
// h_crlb/stress means skip NaN entries (e.g. singular-information trials).
struct PointAggregate {
  double axis_value = 0.0;
  std::string method;
  int trials_ok = 0;
  double rmse_mean = std::numeric_limits<double>::quiet_NaN();
  double rmse_std = std::numeric_limits<double>::quiet_NaN();
  double rmse_median = std::numeric_limits<double>::quiet_NaN();
  double stress_mean = std::numeric_limits<double>::quiet_NaN();
  double h_crlb_mean = std::numeric_limits<double>::quiet_NaN();
  double energy_mean = std::numeric_limits<double>::quiet_NaN();
  double eep_mean = std::numeric_limits<double>::quiet_NaN();
  double eep_median = std::numeric_limits<double>::quiet_NaN();
};
std::vector<PointAggregate> aggregate(const SweepResult& result);

// Writes <dir>/aggregate.txt (whitespace columns, one line per point/method)
// and <dir>/scatter_<method>.txt for each captured scatter set.
void emit_plot_data(const SweepResult& result, const std::string& dir);

// One scatter file: header plus a line per node with true and estimated
// coordinates and the per-node error.
void emit_scatter(const ScatterSet& set, const std::string& path);

}  // namespace uwloc
