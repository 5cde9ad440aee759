#include "uwloc/config.hpp"

#include <string>

#include "doctest.h"

using namespace uwloc;

TEST_CASE("defaults survive an empty config") {
  AppConfig cfg = parse_config("");
  CHECK(cfg.scenario.n_anchors == 4);
  CHECK(cfg.scenario.n_sensors == 96);
  CHECK(cfg.scenario.transmission_range == 60.0);
  CHECK(cfg.scenario.noise.variance == 0.01);
  CHECK(cfg.scenario.seed == 1);
  CHECK(cfg.energy.e_bit == 1e-6);
  CHECK(cfg.sweep.trials == 20);
  CHECK(cfg.sweep.axis == SweepAxis::noise_variance);
  CHECK(cfg.sweep.methods == std::vector<std::string>{"proposed", "wcl"});
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("keys set their targets") {
  AppConfig cfg = parse_config(
      "# comment line\n"
      "seed = 99\n"
      "region.size_x = 50  # inline comment\n"
      "nodes.anchors = 6\n"
      "nodes.sensors = 40\n"
      "anchors.placement = uniform\n"
      "radio.tx_range = 25.5\n"
      "radio.fuse = true\n"
      "noise.mode = distance\n"
      "noise.epsilon = 0.2\n"
      "noise.delta = 2\n"
      "shadowing.std_dev = 1.5\n"
      "shadowing.samples = 8\n"
      "mi.sigma = 0.01\n"
      "acoustic.f = 25\n"
      "optical.ber_target = 1e-3\n"
      "energy.e_bit = 2e-6\n"
      "sweep.axis = tx_range\n"
      "sweep.values = 2, 4, 8\n"
      "sweep.trials = 5\n"
      "sweep.methods = proposed\n");
  CHECK(cfg.scenario.seed == 99);
  CHECK(cfg.scenario.region_size.x() == 50.0);
  CHECK(cfg.scenario.n_anchors == 6);
  CHECK(cfg.scenario.n_sensors == 40);
  CHECK(cfg.scenario.anchor_placement == AnchorPlacement::uniform);
  CHECK(cfg.scenario.transmission_range == 25.5);
  CHECK(cfg.scenario.fuse);
  CHECK(cfg.scenario.noise.mode == NoiseMode::distance);
  CHECK(cfg.scenario.noise.epsilon == 0.2);
  CHECK(cfg.scenario.noise.delta == 2.0);
  CHECK(cfg.scenario.shadowing.std_dev == 1.5);
  CHECK(cfg.scenario.shadowing.mean_estimator_count == 8);
  CHECK(cfg.scenario.mi.sigma == 0.01);
  CHECK(cfg.scenario.acoustic.f == 25.0);
  CHECK(cfg.scenario.optical.ber_target == 1e-3);
  CHECK(cfg.energy.e_bit == 2e-6);
  CHECK(cfg.sweep.axis == SweepAxis::tx_range);
  CHECK(cfg.sweep.values == std::vector<double>{2.0, 4.0, 8.0});
  CHECK(cfg.sweep.trials == 5);
  CHECK(cfg.sweep.methods == std::vector<std::string>{"proposed"});
  CHECK_NOTHROW(cfg.validate());
}

TEST_CASE("later duplicates win") {
  AppConfig cfg = parse_config("nodes.sensors = 10\nnodes.sensors = 30\n");
  CHECK(cfg.scenario.n_sensors == 30);
}

TEST_CASE("errors carry the line number") {
  auto message = [](const std::string& text) {
    try {
      (void)parse_config(text);
      return std::string("no error");
    } catch (const config_error& e) {
      return std::string(e.what());
    }
  };
  CHECK(message("\n\nbogus.key = 1\n").find("line 3") != std::string::npos);
  CHECK(message("bogus.key = 1").find("unknown key 'bogus.key'") != std::string::npos);
  CHECK(message("nodes.sensors = ten").find("line 1") != std::string::npos);
  CHECK(message("nodes.sensors = 1.5").find("integer") != std::string::npos);
  CHECK(message("radio.fuse = maybe").find("boolean") != std::string::npos);
  CHECK(message("just a line").find("key=value") != std::string::npos);
  CHECK(message("radio.tx_range = 5x").find("trailing") != std::string::npos);
  CHECK(message("sweep.axis = sideways").find("sweep.axis") != std::string::npos);
  CHECK(message("anchors.placement = grid").find("placement") != std::string::npos);
}

TEST_CASE("validation rejects bad sweep settings") {
  AppConfig cfg = parse_config("sweep.values = 1, 1, 2\n");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = parse_config("sweep.values = 3, 2\n");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = parse_config("sweep.trials = 0\n");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = parse_config("sweep.methods = proposed, teleport\n");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  cfg = parse_config("sweep.methods = wcl, wcl\n");
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
  CHECK_THROWS_AS((void)parse_config("sweep.values =\n"), config_error);
}

TEST_CASE("missing file is a structured error") {
  CHECK_THROWS_AS((void)load_config("/nonexistent/uwloc.conf"), config_error);
}
