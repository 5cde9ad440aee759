#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "uwloc/metrics.hpp"
#include "uwloc/network.hpp"

namespace uwloc {

enum class SweepAxis { noise_variance, n_nodes, n_anchors, tx_range };
const char* to_string(SweepAxis a);

struct SweepSpec {
  SweepAxis axis = SweepAxis::noise_variance;
  std::vector<double> values{0.0, 0.25, 0.5, 0.75, 1.0};
  int trials = 20;
  std::vector<std::string> methods{"proposed", "wcl"};
};

struct AppConfig {
  ScenarioConfig scenario;
  EnergyParams energy;
  SweepSpec sweep;

  // Scenario validation plus: sweep values non-empty and strictly increasing,
  // trials >= 1, methods a non-empty duplicate-free subset of {proposed, wcl}.
  void validate() const;
};

struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Strict key=value text: one setting per line, '#' starts a comment, blank
// lines ignored, later duplicates win. Unknown keys and malformed values are
// config_errors that carry the line number. The full key list is in the
// README; defaults are the struct defaults.
AppConfig parse_config(const std::string& text);

// parse_config over the file's contents; file errors carry the path.
AppConfig load_config(const std::string& path);

}  // namespace uwloc
