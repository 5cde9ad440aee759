#include "uwloc/config.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <sstream>
#include <unordered_map>

namespace uwloc {

const char* to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::noise_variance: return "noise_variance";
    case SweepAxis::n_nodes: return "n_nodes";
    case SweepAxis::n_anchors: return "n_anchors";
    case SweepAxis::tx_range: return "tx_range";
  }
  return "?";
}

namespace {

[[noreturn]] void fail(int line, const std::string& what) {
  throw config_error("config line " + std::to_string(line) + ": " + what);
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return {};
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

double parse_double(const std::string& v, int line) {
  try {
    size_t used = 0;
    const double d = std::stod(v, &used);
    if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
    return d;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected a number, got '" + v + "'");
  }
}

int parse_int(const std::string& v, int line) {
  const double d = parse_double(v, line);
  const int i = static_cast<int>(d);
  if (static_cast<double>(i) != d) fail(line, "expected an integer, got '" + v + "'");
  return i;
}

std::uint64_t parse_u64(const std::string& v, int line) {
  try {
    size_t used = 0;
    const auto x = std::stoull(v, &used);
    if (used != v.size()) fail(line, "trailing characters in seed '" + v + "'");
    return x;
  } catch (const config_error&) {
    throw;
  } catch (const std::exception&) {
    fail(line, "expected an unsigned integer, got '" + v + "'");
  }
}

bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "1" || v == "on" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "off" || v == "no") return false;
  fail(line, "expected a boolean, got '" + v + "'");
}

std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

using Setter = std::function<void(AppConfig&, const std::string&, int)>;

const std::unordered_map<std::string, Setter>& schema() {
  static const std::unordered_map<std::string, Setter> table = [] {
    std::unordered_map<std::string, Setter> t;
    auto dbl = [&](const char* key, std::function<void(AppConfig&, double)> set) {
      t[key] = [set](AppConfig& c, const std::string& v, int line) {
        set(c, parse_double(v, line));
      };
    };

    t["seed"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.seed = parse_u64(v, line);
    };

    dbl("region.min_x", [](AppConfig& c, double v) { c.scenario.region_min.x() = v; });
    dbl("region.min_y", [](AppConfig& c, double v) { c.scenario.region_min.y() = v; });
    dbl("region.min_z", [](AppConfig& c, double v) { c.scenario.region_min.z() = v; });
    dbl("region.size_x", [](AppConfig& c, double v) { c.scenario.region_size.x() = v; });
    dbl("region.size_y", [](AppConfig& c, double v) { c.scenario.region_size.y() = v; });
    dbl("region.size_z", [](AppConfig& c, double v) { c.scenario.region_size.z() = v; });

    t["nodes.anchors"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.n_anchors = parse_int(v, line);
    };
    t["nodes.sensors"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.n_sensors = parse_int(v, line);
    };
    t["nodes.relays"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.n_relays = parse_int(v, line);
    };
    t["anchors.placement"] = [](AppConfig& c, const std::string& v, int line) {
      if (v == "spread") c.scenario.anchor_placement = AnchorPlacement::spread;
      else if (v == "uniform") c.scenario.anchor_placement = AnchorPlacement::uniform;
      else fail(line, "anchors.placement must be spread or uniform");
    };

    dbl("radio.tx_range", [](AppConfig& c, double v) { c.scenario.transmission_range = v; });
    dbl("radio.optical_max", [](AppConfig& c, double v) { c.scenario.tech.optical_max_m = v; });
    dbl("radio.mi_max", [](AppConfig& c, double v) { c.scenario.tech.mi_max_m = v; });
    t["radio.fuse"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.fuse = parse_bool(v, line);
    };

    t["noise.mode"] = [](AppConfig& c, const std::string& v, int line) {
      if (v == "flat") c.scenario.noise.mode = NoiseMode::flat;
      else if (v == "distance") c.scenario.noise.mode = NoiseMode::distance;
      else fail(line, "noise.mode must be flat or distance");
    };
    dbl("noise.variance", [](AppConfig& c, double v) { c.scenario.noise.variance = v; });
    dbl("noise.epsilon", [](AppConfig& c, double v) { c.scenario.noise.epsilon = v; });
    dbl("noise.delta", [](AppConfig& c, double v) { c.scenario.noise.delta = v; });
    dbl("noise.mult_optical", [](AppConfig& c, double v) { c.scenario.noise.mult_optical = v; });
    dbl("noise.mult_mi", [](AppConfig& c, double v) { c.scenario.noise.mult_mi = v; });
    dbl("noise.mult_acoustic", [](AppConfig& c, double v) { c.scenario.noise.mult_acoustic = v; });

    dbl("shadowing.std_dev", [](AppConfig& c, double v) { c.scenario.shadowing.std_dev = v; });
    t["shadowing.samples"] = [](AppConfig& c, const std::string& v, int line) {
      c.scenario.shadowing.mean_estimator_count = parse_int(v, line);
    };

    dbl("mi.omega", [](AppConfig& c, double v) { c.scenario.mi.omega = v; });
    dbl("mi.mu", [](AppConfig& c, double v) { c.scenario.mi.mu = v; });
    dbl("mi.sigma", [](AppConfig& c, double v) { c.scenario.mi.sigma = v; });
    dbl("mi.p_t", [](AppConfig& c, double v) { c.scenario.mi.p_t = v; });
    dbl("mi.z_t", [](AppConfig& c, double v) { c.scenario.mi.z_t = v; });
    dbl("mi.z_r", [](AppConfig& c, double v) { c.scenario.mi.z_r = v; });
    dbl("mi.d_t", [](AppConfig& c, double v) { c.scenario.mi.d_t = v; });
    dbl("mi.d_r", [](AppConfig& c, double v) { c.scenario.mi.d_r = v; });
    dbl("mi.d0_t", [](AppConfig& c, double v) { c.scenario.mi.d0_t = v; });
    dbl("mi.d0_r", [](AppConfig& c, double v) { c.scenario.mi.d0_r = v; });
    dbl("mi.theta", [](AppConfig& c, double v) { c.scenario.mi.theta_mn = v; });
    dbl("mi.r_min", [](AppConfig& c, double v) { c.scenario.mi.r_min = v; });
    dbl("mi.r_max", [](AppConfig& c, double v) { c.scenario.mi.r_max = v; });

    dbl("acoustic.f", [](AppConfig& c, double v) { c.scenario.acoustic.f = v; });
    dbl("acoustic.p_t", [](AppConfig& c, double v) { c.scenario.acoustic.p_t = v; });
    dbl("acoustic.r_min", [](AppConfig& c, double v) { c.scenario.acoustic.r_min = v; });
    dbl("acoustic.r_max", [](AppConfig& c, double v) { c.scenario.acoustic.r_max = v; });

    dbl("optical.s_lambda", [](AppConfig& c, double v) { c.scenario.optical.s_lambda = v; });
    dbl("optical.a_lambda", [](AppConfig& c, double v) { c.scenario.optical.a_lambda = v; });
    dbl("optical.eta_m", [](AppConfig& c, double v) { c.scenario.optical.eta_m = v; });
    dbl("optical.eta_n", [](AppConfig& c, double v) { c.scenario.optical.eta_n = v; });
    dbl("optical.area_n", [](AppConfig& c, double v) { c.scenario.optical.area_n = v; });
    dbl("optical.theta", [](AppConfig& c, double v) { c.scenario.optical.theta = v; });
    dbl("optical.theta0", [](AppConfig& c, double v) { c.scenario.optical.theta0 = v; });
    dbl("optical.p_t", [](AppConfig& c, double v) { c.scenario.optical.p_t = v; });
    dbl("optical.t_slot", [](AppConfig& c, double v) { c.scenario.optical.t_slot = v; });
    dbl("optical.data_rate", [](AppConfig& c, double v) { c.scenario.optical.data_rate = v; });
    dbl("optical.planck", [](AppConfig& c, double v) { c.scenario.optical.planck = v; });
    dbl("optical.c_water", [](AppConfig& c, double v) { c.scenario.optical.c_water = v; });
    dbl("optical.wavelength", [](AppConfig& c, double v) { c.scenario.optical.wavelength = v; });
    dbl("optical.dark_count", [](AppConfig& c, double v) { c.scenario.optical.dark_count = v; });
    dbl("optical.background", [](AppConfig& c, double v) { c.scenario.optical.background = v; });
    dbl("optical.ber_target", [](AppConfig& c, double v) { c.scenario.optical.ber_target = v; });
    dbl("optical.r_min", [](AppConfig& c, double v) { c.scenario.optical.r_min = v; });
    dbl("optical.r_max", [](AppConfig& c, double v) { c.scenario.optical.r_max = v; });

    dbl("energy.e_bit", [](AppConfig& c, double v) { c.energy.e_bit = v; });
    dbl("energy.e_fundamental", [](AppConfig& c, double v) { c.energy.e_fundamental = v; });
    dbl("energy.wavelength", [](AppConfig& c, double v) { c.energy.wavelength = v; });

    t["sweep.axis"] = [](AppConfig& c, const std::string& v, int line) {
      if (v == "noise_variance") c.sweep.axis = SweepAxis::noise_variance;
      else if (v == "n_nodes") c.sweep.axis = SweepAxis::n_nodes;
      else if (v == "n_anchors") c.sweep.axis = SweepAxis::n_anchors;
      else if (v == "tx_range") c.sweep.axis = SweepAxis::tx_range;
      else fail(line, "sweep.axis must be one of noise_variance, n_nodes, n_anchors, tx_range");
    };
    t["sweep.values"] = [](AppConfig& c, const std::string& v, int line) {
      std::vector<double> vals;
      for (const auto& item : split_list(v)) vals.push_back(parse_double(item, line));
      if (vals.empty()) fail(line, "sweep.values must list at least one value");
      c.sweep.values = std::move(vals);
    };
    t["sweep.trials"] = [](AppConfig& c, const std::string& v, int line) {
      c.sweep.trials = parse_int(v, line);
    };
    t["sweep.methods"] = [](AppConfig& c, const std::string& v, int line) {
      auto methods = split_list(v);
      if (methods.empty()) fail(line, "sweep.methods must list at least one method");
      c.sweep.methods = std::move(methods);
    };
    return t;
  }();
  return table;
}

}  // namespace

void AppConfig::validate() const {
  scenario.validate();
  if (sweep.values.empty())
    throw std::invalid_argument("sweep.values must not be empty");
  for (size_t i = 1; i < sweep.values.size(); ++i)
    if (sweep.values[i] <= sweep.values[i - 1])
      throw std::invalid_argument("sweep.values must be strictly increasing");
  if (sweep.trials < 1) throw std::invalid_argument("sweep.trials must be >= 1");
  if (sweep.methods.empty())
    throw std::invalid_argument("sweep.methods must not be empty");
  for (const auto& m : sweep.methods) {
    if (m != "proposed" && m != "wcl")
      throw std::invalid_argument("unknown method '" + m + "' (use proposed, wcl)");
    if (std::count(sweep.methods.begin(), sweep.methods.end(), m) != 1)
      throw std::invalid_argument("duplicate method '" + m + "'");
  }
}

AppConfig parse_config(const std::string& text) {
  AppConfig cfg;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    raw = trim(raw);
    if (raw.empty()) continue;
    const auto eq = raw.find('=');
    if (eq == std::string::npos) fail(line, "expected key=value, got '" + raw + "'");
    const std::string key = trim(raw.substr(0, eq));
    const std::string value = trim(raw.substr(eq + 1));
    if (key.empty()) fail(line, "empty key");
    const auto it = schema().find(key);
    if (it == schema().end()) fail(line, "unknown key '" + key + "'");
    it->second(cfg, value, line);
  }
  return cfg;
}

AppConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

}  // namespace uwloc
