#include "uwloc/network.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace uwloc {

namespace {

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t kPlacementTag = 0x706C6163ULL;  // placement stream
constexpr std::uint64_t kPairTag = 0x70616972ULL;       // per-pair streams

double tech_multiplier(const NoiseModel& noise, Technology tech) {
  switch (tech) {
    case Technology::optical: return noise.mult_optical;
    case Technology::mi: return noise.mult_mi;
    case Technology::acoustic: return noise.mult_acoustic;
  }
  return 1.0;
}

double clamp_inside(double v, double lo, double hi) {
  // Nudge strictly inside the open interval so the inversion bracket holds.
  const double eps = 1e-9;
  const double lo_in = lo + eps * std::fabs(lo);
  const double hi_in = hi - eps * std::fabs(hi);
  return std::clamp(v, lo_in, hi_in);
}

// True distance -> forward model -> dB-domain shadowing -> inversion.
double round_trip_range(const ScenarioConfig& cfg, Technology tech, double d,
                        std::mt19937_64& rng) {
  switch (tech) {
    case Technology::optical: {
      const double p_true = optical_received_power(cfg.optical, d);
      const double db = shadowed_power_sample(10.0 * std::log10(p_true),
                                              cfg.shadowing, rng);
      double p_obs = std::pow(10.0, db / 10.0);
      p_obs = clamp_inside(p_obs,
                           optical_received_power(cfg.optical, cfg.optical.r_max),
                           optical_received_power(cfg.optical, cfg.optical.r_min));
      return optical_invert_power(cfg.optical, p_obs);
    }
    case Technology::mi: {
      const double p_true = mi_received_power(cfg.mi, d);
      const double db = shadowed_power_sample(10.0 * std::log10(p_true),
                                              cfg.shadowing, rng);
      double p_obs = std::pow(10.0, db / 10.0);
      p_obs = clamp_inside(p_obs, mi_received_power(cfg.mi, cfg.mi.r_max),
                           mi_received_power(cfg.mi, cfg.mi.r_min));
      return mi_invert_range(cfg.mi, p_obs);
    }
    case Technology::acoustic: {
      const double loss_true = acoustic_path_loss(cfg.acoustic, d);
      double loss = shadowed_power_sample(loss_true, cfg.shadowing, rng);
      loss = clamp_inside(loss, acoustic_path_loss(cfg.acoustic, cfg.acoustic.r_min),
                          acoustic_path_loss(cfg.acoustic, cfg.acoustic.r_max));
      return acoustic_invert_range(cfg.acoustic, loss);
    }
  }
  throw std::logic_error("round_trip_range: unknown technology");
}

}  // namespace

const char* to_string(Role r) {
  switch (r) {
    case Role::anchor: return "anchor";
    case Role::sensor: return "sensor";
    case Role::relay: return "relay";
  }
  return "?";
}

const char* to_string(Technology t) {
  switch (t) {
    case Technology::mi: return "mi";
    case Technology::acoustic: return "acoustic";
    case Technology::optical: return "optical";
  }
  return "?";
}

std::uint64_t substream(std::uint64_t seed, std::uint64_t tag, std::uint64_t a,
                        std::uint64_t b) {
  std::uint64_t h = mix64(seed + 0x9E3779B97F4A7C15ULL);
  h = mix64(h ^ (tag + 0x9E3779B97F4A7C15ULL));
  h = mix64(h ^ (a + 0xD1B54A32D192ED03ULL));
  h = mix64(h ^ (b + 0x8CB92BA72F3D8DD7ULL));
  return h;
}

void ScenarioConfig::validate() const {
  if (n_anchors < 4)
    throw std::invalid_argument("config: need at least 4 anchors for a 3D fit, got " +
                                std::to_string(n_anchors));
  if (n_sensors < 1)
    throw std::invalid_argument("config: need at least 1 sensor node");
  if (n_relays < 0)
    throw std::invalid_argument("config: negative relay count");
  for (int j = 0; j < 3; ++j)
    if (!(region_size[j] > 0.0))
      throw std::invalid_argument("config: region has zero or negative extent on axis " +
                                  std::to_string(j));
  if (transmission_range < 0.0)
    throw std::invalid_argument("config: negative transmission range");
  if (!(tech.optical_max_m > 0.0) || tech.mi_max_m < tech.optical_max_m)
    throw std::invalid_argument(
        "config: technology thresholds need 0 < optical_max <= mi_max");
  if (noise.variance < 0.0 || noise.epsilon < 0.0)
    throw std::invalid_argument("config: negative noise variance/epsilon");
  if (noise.delta < 1.0)
    throw std::invalid_argument("config: noise delta must be >= 1");
  if (noise.mult_optical <= 0.0 || noise.mult_mi <= 0.0 || noise.mult_acoustic <= 0.0)
    throw std::invalid_argument("config: technology noise multipliers must be positive");
  if (shadowing.std_dev < 0.0 || shadowing.mean_estimator_count < 1)
    throw std::invalid_argument("config: invalid shadowing model");
}

std::vector<NodePose> generate_scenario(const ScenarioConfig& cfg) {
  cfg.validate();
  // Corner visit order keeps every prefix of >= 4 anchors non-coplanar
  // (the first four form a regular tetrahedron on the box).
  static const int corners[8][3] = {{0, 0, 0}, {1, 1, 0}, {1, 0, 1}, {0, 1, 1},
                                    {1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 1}};
  std::mt19937_64 rng(substream(cfg.seed, kPlacementTag, 0, 0));
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  auto draw = [&]() {
    Eigen::Vector3d p;
    for (int j = 0; j < 3; ++j) p[j] = cfg.region_min[j] + u01(rng) * cfg.region_size[j];
    return p;
  };

  std::vector<NodePose> nodes;
  nodes.reserve(cfg.total_nodes());
  int id = 0;
  for (int i = 0; i < cfg.n_anchors; ++i, ++id) {
    Eigen::Vector3d p;
    if (cfg.anchor_placement == AnchorPlacement::spread && i < 8) {
      for (int j = 0; j < 3; ++j)
        p[j] = cfg.region_min[j] + corners[i][j] * cfg.region_size[j];
    } else {
      p = draw();
    }
    nodes.push_back({id, Role::anchor, p});
  }
  for (int i = 0; i < cfg.n_sensors; ++i, ++id)
    nodes.push_back({id, Role::sensor, draw()});
  for (int i = 0; i < cfg.n_relays; ++i, ++id)
    nodes.push_back({id, Role::relay, draw()});
  return nodes;
}

Technology select_technology(double d_true, const TechThresholds& t) {
  if (!(d_true > 0.0))
    throw std::invalid_argument("select_technology: non-positive distance");
  if (d_true <= t.optical_max_m) return Technology::optical;
  if (d_true <= t.mi_max_m) return Technology::mi;
  return Technology::acoustic;
}

double observation_variance(const NoiseModel& noise, Technology tech, double d) {
  const double base = (noise.mode == NoiseMode::flat)
                          ? noise.variance
                          : noise.epsilon * std::pow(d, noise.delta - 1.0);
  return base * tech_multiplier(noise, tech);
}

std::vector<RangeObservation> synthesize_observations(
    const std::vector<NodePose>& nodes, const ScenarioConfig& cfg) {
  constexpr double kVarianceFloor = 1e-12;
  std::vector<RangeObservation> obs;
  const int k = static_cast<int>(nodes.size());
  for (int m = 0; m < k; ++m) {
    for (int n = m + 1; n < k; ++n) {
      double d = (nodes[m].position - nodes[n].position).norm();
      if (d > cfg.transmission_range) continue;
      d = std::max(d, 1e-9);  // coincident nodes still get a tiny positive range
      std::mt19937_64 rng(substream(cfg.seed, kPairTag,
                                    static_cast<std::uint64_t>(m),
                                    static_cast<std::uint64_t>(n)));
      const Technology primary = select_technology(d, cfg.tech);

      std::vector<Technology> used;
      if (cfg.fuse) {
        if (d <= cfg.tech.optical_max_m) used.push_back(Technology::optical);
        if (d <= cfg.tech.mi_max_m) used.push_back(Technology::mi);
        used.push_back(Technology::acoustic);
      } else {
        used.push_back(primary);
      }

      double weight_sum = 0.0, weighted_range = 0.0;
      for (Technology tech : used) {
        double r = round_trip_range(cfg, tech, d, rng);
        const double var = observation_variance(cfg.noise, tech, d);
        if (var > 0.0) {
          std::normal_distribution<double> noise(0.0, std::sqrt(var));
          r += noise(rng);
        }
        r = std::max(r, 1e-6);
        const double w = 1.0 / std::max(var, kVarianceFloor);
        weight_sum += w;
        weighted_range += w * r;
      }
      const double variance = std::max(1.0 / weight_sum, kVarianceFloor);
      obs.push_back({m, n, primary, weighted_range / weight_sum, variance,
                     1.0 / variance});
    }
  }
  return obs;
}

Eigen::MatrixXd positions_matrix(const std::vector<NodePose>& nodes) {
  Eigen::MatrixXd out(static_cast<Eigen::Index>(nodes.size()), 3);
  for (Eigen::Index i = 0; i < out.rows(); ++i)
    out.row(i) = nodes[static_cast<size_t>(i)].position.transpose();
  return out;
}

double pair_information_variance(const ScenarioConfig& cfg, double d_true) {
  const double d = std::max(d_true, 1e-9);
  if (!cfg.fuse)
    return observation_variance(cfg.noise, select_technology(d, cfg.tech), d);
  std::vector<Technology> used;
  if (d <= cfg.tech.optical_max_m) used.push_back(Technology::optical);
  if (d <= cfg.tech.mi_max_m) used.push_back(Technology::mi);
  used.push_back(Technology::acoustic);
  double inv_sum = 0.0;
  for (Technology tech : used) {
    const double var = observation_variance(cfg.noise, tech, d);
    if (var == 0.0) return 0.0;  // one noiseless band pins the pair exactly
    inv_sum += 1.0 / var;
  }
  return 1.0 / inv_sum;
}

}  // namespace uwloc
