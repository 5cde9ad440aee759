#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "uwloc/channels.hpp"

namespace uwloc {

enum class Role { anchor, sensor, relay };
enum class Technology { mi, acoustic, optical };

const char* to_string(Role r);
const char* to_string(Technology t);

struct NodePose {
  int id;
  Role role;
  Eigen::Vector3d position;  // meters, inside the configured region
};

struct TechThresholds {
  double optical_max_m = 10.0;
  double mi_max_m = 30.0;
};

enum class NoiseMode { flat, distance };

// Additive range-noise model. Flat mode draws Normal(0, variance); distance
// mode uses variance epsilon * r^(delta-1). Either is scaled by a
// per-technology multiplier before use.
struct NoiseModel {
  NoiseMode mode = NoiseMode::flat;
  double variance = 0.01;  // m^2, flat mode
  double epsilon = 0.01;   // distance mode scale
  double delta = 1.0;      // distance mode exponent
  double mult_optical = 0.5;
  double mult_mi = 1.0;
  double mult_acoustic = 2.0;
};

enum class AnchorPlacement { spread, uniform };

struct ScenarioConfig {
  Eigen::Vector3d region_min{0.0, 0.0, 0.0};
  Eigen::Vector3d region_size{100.0, 100.0, 100.0};
  int n_anchors = 4;
  int n_sensors = 96;
  int n_relays = 4;
  double transmission_range = 60.0;  // m
  TechThresholds tech;
  NoiseModel noise;
  ShadowingModel shadowing;
  bool fuse = false;  // combine all usable technologies per pair
  AnchorPlacement anchor_placement = AnchorPlacement::spread;
  std::uint64_t seed = 1;
  MiParams mi;
  AcousticParams acoustic;
  OpticalParams optical;

  int total_nodes() const { return n_anchors + n_sensors + n_relays; }
  Eigen::Vector3d region_centroid() const { return region_min + 0.5 * region_size; }
  void validate() const;  // throws std::invalid_argument with the offending field
};

struct RangeObservation {
  int m, n;               // node ids, m < n
  Technology technology;  // selected band (primary band when fusing)
  double measured_range;  // m
  double variance;        // m^2, floored at 1e-12 so the weight stays finite
  double weight;          // 1/variance
};

// Deterministic stream splitter: a 64-bit hash of (seed, tag, a, b) used to
// seed independent per-purpose and per-pair generators.
std::uint64_t substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                        std::uint64_t b);

// Anchors first (ids 0..M-1), then sensors, then relays. Anchor placement
// defaults to spread: box corners in an order whose every prefix of >= 4 is
// non-coplanar; extra anchors beyond 8 are placed uniformly at random.
std::vector<NodePose> generate_scenario(const ScenarioConfig& cfg);

// Shortest-range technology able to cover the distance: optical, then MI,
// then acoustic as the fallback.
Technology select_technology(double d_true, const TechThresholds& t);

// Noise variance assigned to an observation of a link with true distance d;
// not floored (exact zero means a noiseless measurement).
double observation_variance(const NoiseModel& noise, Technology tech, double d);

// One observation per unordered pair within transmission range: the true
// distance runs through the selected technology's forward model, dB-domain
// shadowing, and inversion, then picks up additive range-domain noise.
// Deterministic given cfg.seed; per-pair RNG substreams make the output
// independent of iteration order.
std::vector<RangeObservation> synthesize_observations(
    const std::vector<NodePose>& nodes, const ScenarioConfig& cfg);

// Row i holds nodes[i].position (ids are positional in generated scenarios).
Eigen::MatrixXd positions_matrix(const std::vector<NodePose>& nodes);

// Exact (unfloored) variance of the per-pair observation synthesized for a
// link of true distance d: the selected technology's variance, or the
// inverse-variance combination over all usable technologies when fusing.
// Zero means the pair is measured noiselessly.
double pair_information_variance(const ScenarioConfig& cfg, double d_true);

}  // namespace uwloc
