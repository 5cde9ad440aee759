#include "uwloc/network.hpp"

#include <Eigen/LU>

#include <cmath>
#include <set>
#include <stdexcept>

#include "doctest.h"

using namespace uwloc;

namespace {
ScenarioConfig small_cfg() {
  ScenarioConfig cfg;
  cfg.n_anchors = 4;
  cfg.n_sensors = 10;
  cfg.n_relays = 2;
  cfg.seed = 42;
  return cfg;
}
}  // namespace

TEST_CASE("scenario generation basics") {
  ScenarioConfig cfg;  // defaults: 4 + 96 + 4 nodes in a 100 m cube
  auto nodes = generate_scenario(cfg);
  CHECK(nodes.size() == 104);
  int anchors = 0, sensors = 0, relays = 0;
  std::set<int> ids;
  for (const auto& n : nodes) {
    ids.insert(n.id);
    if (n.role == Role::anchor) ++anchors;
    if (n.role == Role::sensor) ++sensors;
    if (n.role == Role::relay) ++relays;
  }
  CHECK(ids.size() == nodes.size());
  CHECK(anchors == 4);
  CHECK(sensors == 96);
  CHECK(relays == 4);

  SUBCASE("identical placements under the same seed") {
    auto again = generate_scenario(cfg);
    for (size_t i = 0; i < nodes.size(); ++i)
      CHECK(nodes[i].position == again[i].position);
  }
  SUBCASE("different seed moves the sensors") {
    ScenarioConfig other = cfg;
    other.seed = 7;
    auto moved = generate_scenario(other);
    CHECK(moved[10].position != nodes[10].position);
  }
}

TEST_CASE("positions stay inside the region over many seeds") {
  ScenarioConfig cfg = small_cfg();
  cfg.region_min = Eigen::Vector3d(-20.0, 5.0, 100.0);
  cfg.region_size = Eigen::Vector3d(40.0, 10.0, 50.0);
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    cfg.seed = seed;
    for (const auto& n : generate_scenario(cfg)) {
      for (int j = 0; j < 3; ++j) {
        CHECK(n.position[j] >= cfg.region_min[j]);
        CHECK(n.position[j] <= cfg.region_min[j] + cfg.region_size[j]);
      }
    }
  }
}

TEST_CASE("spread anchors are never coplanar") {
  for (int m : {4, 5, 8, 12}) {
    ScenarioConfig cfg = small_cfg();
    cfg.n_anchors = m;
    auto nodes = generate_scenario(cfg);
    // Volume spanned by the first four anchors.
    Eigen::Matrix3d e;
    e.col(0) = nodes[1].position - nodes[0].position;
    e.col(1) = nodes[2].position - nodes[0].position;
    e.col(2) = nodes[3].position - nodes[0].position;
    CHECK(std::fabs(e.determinant()) > 1e3);
  }
}

TEST_CASE("config validation") {
  ScenarioConfig cfg = small_cfg();
  cfg.n_anchors = 3;
  CHECK_THROWS_AS((void)generate_scenario(cfg), std::invalid_argument);
  cfg = small_cfg();
  cfg.region_size[1] = 0.0;
  CHECK_THROWS_AS((void)generate_scenario(cfg), std::invalid_argument);
  cfg = small_cfg();
  cfg.noise.delta = 0.5;
  CHECK_THROWS_AS(cfg.validate(), std::invalid_argument);
}

TEST_CASE("technology selection bands") {
  TechThresholds t;  // optical 10 m, MI 30 m
  CHECK(select_technology(5.0, t) == Technology::optical);
  CHECK(select_technology(10.0, t) == Technology::optical);
  CHECK(select_technology(10.5, t) == Technology::mi);
  CHECK(select_technology(29.0, t) == Technology::mi);
  CHECK(select_technology(30.0, t) == Technology::mi);
  CHECK(select_technology(80.0, t) == Technology::acoustic);
  CHECK_THROWS_AS((void)select_technology(0.0, t), std::invalid_argument);
}

TEST_CASE("noiseless observations reproduce true distances") {
  ScenarioConfig cfg = small_cfg();
  cfg.noise.variance = 0.0;
  auto nodes = generate_scenario(cfg);
  auto obs = synthesize_observations(nodes, cfg);
  CHECK(!obs.empty());
  for (const auto& o : obs) {
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    CHECK(std::fabs(o.measured_range - d) <= 1e-6);
    CHECK(select_technology(d, cfg.tech) == o.technology);
  }
}

TEST_CASE("observation bookkeeping") {
  ScenarioConfig cfg = small_cfg();
  cfg.noise.variance = 0.25;
  auto nodes = generate_scenario(cfg);
  auto obs = synthesize_observations(nodes, cfg);
  std::set<std::pair<int, int>> pairs;
  for (const auto& o : obs) {
    CHECK(o.m < o.n);
    CHECK(pairs.insert({o.m, o.n}).second);  // one observation per pair
    CHECK(o.weight * o.variance == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(o.measured_range > 0.0);
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    CHECK(d <= cfg.transmission_range);
    // Band partition against the selected technology.
    if (o.technology == Technology::optical) CHECK(d <= cfg.tech.optical_max_m);
    if (o.technology == Technology::mi) {
      CHECK(d > cfg.tech.optical_max_m);
      CHECK(d <= cfg.tech.mi_max_m);
    }
    if (o.technology == Technology::acoustic) CHECK(d > cfg.tech.mi_max_m);
    // Flat mode records base variance times the technology multiplier.
    CHECK(o.variance ==
          doctest::Approx(observation_variance(cfg.noise, o.technology, d))
              .epsilon(1e-12));
  }

  SUBCASE("zero transmission range yields no observations") {
    ScenarioConfig z = cfg;
    z.transmission_range = 0.0;
    CHECK(synthesize_observations(nodes, z).empty());
  }
  SUBCASE("same seed reproduces identical observations") {
    auto again = synthesize_observations(nodes, cfg);
    REQUIRE(again.size() == obs.size());
    for (size_t i = 0; i < obs.size(); ++i) {
      CHECK(obs[i].measured_range == again[i].measured_range);
      CHECK(obs[i].variance == again[i].variance);
    }
  }
}

TEST_CASE("distance-dependent variance mode") {
  ScenarioConfig cfg = small_cfg();
  cfg.noise.mode = NoiseMode::distance;
  cfg.noise.epsilon = 0.004;
  cfg.noise.delta = 2.0;
  auto nodes = generate_scenario(cfg);
  for (const auto& o : synthesize_observations(nodes, cfg)) {
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    double mult = 1.0;
    if (o.technology == Technology::optical) mult = cfg.noise.mult_optical;
    if (o.technology == Technology::acoustic) mult = cfg.noise.mult_acoustic;
    CHECK(o.variance == doctest::Approx(0.004 * d * mult).epsilon(1e-9));
  }
}

TEST_CASE("mean absolute error matches the half-normal prediction") {
  // All multipliers 1 so every observation shares the same sigma = 0.1 m.
  ScenarioConfig cfg;
  cfg.n_anchors = 4;
  cfg.n_sensors = 140;
  cfg.n_relays = 6;
  cfg.noise.variance = 0.01;
  cfg.noise.mult_optical = cfg.noise.mult_mi = cfg.noise.mult_acoustic = 1.0;
  cfg.transmission_range = 175.0;  // nearly complete graph
  cfg.seed = 3;
  auto nodes = generate_scenario(cfg);
  auto obs = synthesize_observations(nodes, cfg);
  REQUIRE(obs.size() >= 10000);
  double abs_err = 0.0;
  for (const auto& o : obs) {
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    abs_err += std::fabs(o.measured_range - d);
  }
  abs_err /= static_cast<double>(obs.size());
  const double expected = std::sqrt(2.0 / 3.141592653589793) * 0.1;
  CHECK(std::fabs(abs_err - expected) <= 0.05 * expected);
}

TEST_CASE("fuse mode combines every usable technology") {
  ScenarioConfig cfg = small_cfg();
  cfg.fuse = true;
  cfg.noise.variance = 0.04;
  auto nodes = generate_scenario(cfg);
  auto obs = synthesize_observations(nodes, cfg);
  std::set<std::pair<int, int>> pairs;
  for (const auto& o : obs) {
    CHECK(pairs.insert({o.m, o.n}).second);
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    // Combined variance is the inverse of the summed inverse variances.
    double wsum = 1.0 / observation_variance(cfg.noise, Technology::acoustic, d);
    if (d <= cfg.tech.mi_max_m)
      wsum += 1.0 / observation_variance(cfg.noise, Technology::mi, d);
    if (d <= cfg.tech.optical_max_m)
      wsum += 1.0 / observation_variance(cfg.noise, Technology::optical, d);
    CHECK(o.variance == doctest::Approx(1.0 / wsum).epsilon(1e-9));
  }

  SUBCASE("fusion tightens the recorded variance") {
    ScenarioConfig plain = cfg;
    plain.fuse = false;
    auto single = synthesize_observations(nodes, plain);
    REQUIRE(single.size() == obs.size());
    for (size_t i = 0; i < obs.size(); ++i)
      CHECK(obs[i].variance <= single[i].variance + 1e-15);
  }
}

TEST_CASE("shadowing perturbs and averaging tames the round trip") {
  ScenarioConfig cfg = small_cfg();
  cfg.noise.variance = 0.0;
  cfg.shadowing = {0.5, 1};
  auto nodes = generate_scenario(cfg);
  auto noisy = synthesize_observations(nodes, cfg);
  double worst = 0.0;
  for (const auto& o : noisy) {
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    worst = std::max(worst, std::fabs(o.measured_range - d));
  }
  CHECK(worst > 1e-3);  // 0.5 dB shadowing visibly shifts ranges

  cfg.shadowing = {0.5, 400};  // heavy averaging pulls estimates back in
  auto tamed = synthesize_observations(nodes, cfg);
  double worst_tamed = 0.0;
  for (const auto& o : tamed) {
    const double d = (nodes[o.m].position - nodes[o.n].position).norm();
    worst_tamed = std::max(worst_tamed, std::fabs(o.measured_range - d));
  }
  CHECK(worst_tamed < worst);
}

TEST_CASE("extreme noise never produces a non-positive range") {
  ScenarioConfig cfg = small_cfg();
  cfg.region_size = Eigen::Vector3d(8.0, 8.0, 8.0);
  cfg.noise.variance = 1.0;
  cfg.transmission_range = 14.0;
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    cfg.seed = seed;
    auto nodes = generate_scenario(cfg);
    for (const auto& o : synthesize_observations(nodes, cfg))
      CHECK(o.measured_range > 0.0);
  }
}

TEST_CASE("pair_information_variance mirrors synthesis weighting") {
  ScenarioConfig cfg;
  cfg.noise.mode = NoiseMode::flat;
  cfg.noise.variance = 0.04;

  SUBCASE("single technology: the selected band's variance") {
    cfg.fuse = false;
    CHECK(pair_information_variance(cfg, 5.0) ==
          doctest::Approx(0.04 * cfg.noise.mult_optical).epsilon(1e-14));
    CHECK(pair_information_variance(cfg, 20.0) ==
          doctest::Approx(0.04 * cfg.noise.mult_mi).epsilon(1e-14));
    CHECK(pair_information_variance(cfg, 50.0) ==
          doctest::Approx(0.04 * cfg.noise.mult_acoustic).epsilon(1e-14));
  }
  SUBCASE("fusing combines inverse variances of every usable band") {
    cfg.fuse = true;
    const double v = 0.04;
    const double expect_short =
        1.0 / (1.0 / (v * 0.5) + 1.0 / (v * 1.0) + 1.0 / (v * 2.0));
    CHECK(pair_information_variance(cfg, 5.0) ==
          doctest::Approx(expect_short).epsilon(1e-14));
    const double expect_mid = 1.0 / (1.0 / (v * 1.0) + 1.0 / (v * 2.0));
    CHECK(pair_information_variance(cfg, 20.0) ==
          doctest::Approx(expect_mid).epsilon(1e-14));
    CHECK(pair_information_variance(cfg, 50.0) ==
          doctest::Approx(v * 2.0).epsilon(1e-14));
  }
  SUBCASE("zero configured variance reports zero") {
    cfg.noise.variance = 0.0;
    cfg.fuse = true;
    CHECK(pair_information_variance(cfg, 5.0) == 0.0);
    cfg.fuse = false;
    CHECK(pair_information_variance(cfg, 50.0) == 0.0);
  }
  SUBCASE("matches the recorded variance of synthesized observations") {
    cfg.fuse = true;
    cfg.n_sensors = 16;
    cfg.transmission_range = 80.0;
    auto nodes = generate_scenario(cfg);
    for (const auto& o : synthesize_observations(nodes, cfg)) {
      const double d = (nodes[o.m].position - nodes[o.n].position).norm();
      CHECK(o.variance ==
            doctest::Approx(pair_information_variance(cfg, d)).epsilon(1e-10));
    }
  }
}
