#include "uwloc/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <utility>

#include "uwloc/completion.hpp"
#include "uwloc/crlb.hpp"
#include "uwloc/localization.hpp"
#include "uwloc/metrics.hpp"

namespace uwloc {
namespace {

constexpr std::uint64_t kSweepTag = 0x73776570ull;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string sanitize(std::string text) {
  for (char& c : text)
    if (c == ',' || c == '\n' || c == '\r') c = ';';
  return text;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

double require_count(double value, const char* what) {
  const double rounded = std::round(value);
  if (!(std::abs(value - rounded) <= 1e-9))
    throw std::invalid_argument(std::string(what) + " must be an integer, got " +
                                format_double(value));
  return rounded;
}

struct MedianBuffer {
  std::vector<double> values;
  void add(double v) {
    if (std::isfinite(v)) values.push_back(v);
  }
  double mean() const {
    if (values.empty()) return kNaN;
    double s = 0.0;
    for (double v : values) s += v;
    return s / static_cast<double>(values.size());
  }
  double stddev() const {
    if (values.empty()) return kNaN;
    const double m = mean();
    double s = 0.0;
    for (double v : values) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(values.size()));
  }
  double median() {
    if (values.empty()) return kNaN;
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
  }
};

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

constexpr const char* kCsvHeader =
    "axis_value,trial_seed,method,rmse_m,h_crlb_m,stress,energy_J,"
    "energy_error_product,status,reason";

}  // namespace

CrlbReport observation_bound(const ScenarioConfig& cfg,
                             const std::vector<NodePose>& nodes,
                             const std::vector<RangeObservation>& observations) {
  const int k = cfg.total_nodes();
  std::vector<FimEdge> edges;
  edges.reserve(observations.size());
  bool all_zero = true;
  for (const auto& o : observations) {
    const double r =
        std::max((nodes[o.m].position - nodes[o.n].position).norm(), 1e-9);
    const double var = pair_information_variance(cfg, r);
    if (var > 0.0) all_zero = false;
    edges.push_back(
        {o.m, o.n, var, 1.0 + 0.5 * cfg.noise.delta * cfg.noise.delta * var / r});
  }
  std::vector<int> unknowns;
  for (int i = cfg.n_anchors; i < k; ++i) unknowns.push_back(i);
  if (edges.empty() || all_zero || unknowns.empty()) {
    CrlbReport report;
    report.h_crlb = 0.0;
    report.raw_trace = 0.0;
    report.per_node_bound = Eigen::VectorXd::Zero(k);
    return report;
  }
  for (auto& e : edges)
    if (e.variance <= 0.0) e.variance = 1e-12;
  return h_crlb(build_fim(positions_matrix(nodes), edges), unknowns);
}

CrlbReport scenario_crlb(const ScenarioConfig& cfg) {
  cfg.validate();
  const auto nodes = generate_scenario(cfg);
  return observation_bound(cfg, nodes, synthesize_observations(nodes, cfg));
}

ScenarioConfig apply_axis(const ScenarioConfig& base, SweepAxis axis, double value) {
  ScenarioConfig cfg = base;
  switch (axis) {
    case SweepAxis::noise_variance:
      if (!(value >= 0.0))
        throw std::invalid_argument("noise variance must be non-negative, got " +
                                    format_double(value));
      if (cfg.noise.mode == NoiseMode::flat)
        cfg.noise.variance = value;
      else
        cfg.noise.epsilon = value;
      break;
    case SweepAxis::n_nodes: {
      const int total = static_cast<int>(require_count(value, "node count"));
      const int sensors = total - base.n_anchors - base.n_relays;
      if (sensors < 1)
        throw std::invalid_argument("node count " + std::to_string(total) +
                                    " leaves no sensors after anchors and relays");
      cfg.n_sensors = sensors;
      break;
    }
    case SweepAxis::n_anchors: {
      const int anchors = static_cast<int>(require_count(value, "anchor count"));
      const int sensors = base.total_nodes() - anchors - base.n_relays;
      if (anchors < 1 || sensors < 1)
        throw std::invalid_argument("anchor count " + std::to_string(anchors) +
                                    " does not fit the fixed node total");
      cfg.n_anchors = anchors;
      cfg.n_sensors = sensors;
      break;
    }
    case SweepAxis::tx_range:
      if (!(value > 0.0))
        throw std::invalid_argument("transmission range must be positive, got " +
                                    format_double(value));
      cfg.transmission_range = value;
      break;
  }
  return cfg;
}

std::vector<SweepRow> run_trial(const ScenarioConfig& cfg, const EnergyParams& energy,
                                const std::vector<std::string>& methods,
                                double axis_value, std::uint64_t trial_seed,
                                std::vector<ScatterSet>* scatter) {
  auto fresh_row = [&](const std::string& method) {
    SweepRow row;
    row.axis_value = axis_value;
    row.trial_seed = trial_seed;
    row.method = method;
    return row;
  };
  std::vector<SweepRow> rows;
  rows.reserve(methods.size());

  ScenarioConfig trial_cfg = cfg;
  trial_cfg.seed = trial_seed;

  std::vector<NodePose> nodes;
  Graph graph;
  CompletedDistanceMatrix completed;
  Eigen::MatrixXd truth;
  double bound = kNaN;
  double energy_total = kNaN;
  std::string note;
  try {
    trial_cfg.validate();
    nodes = generate_scenario(trial_cfg);
    const auto obs = synthesize_observations(nodes, trial_cfg);
    graph = build_graph(obs, trial_cfg.total_nodes());
    completed = complete_matrix(graph);
    truth = positions_matrix(nodes);
    try {
      bound = observation_bound(trial_cfg, nodes, obs).h_crlb;
    } catch (const singular_fim_error& err) {
      bound = kNaN;
      note = sanitize(err.what());
    }
    const Eigen::VectorXd ranges = Eigen::VectorXd::Constant(
        trial_cfg.total_nodes(), trial_cfg.transmission_range);
    energy_total = total_energy(energy, ranges);
  } catch (const std::exception& err) {
    for (const auto& method : methods) {
      SweepRow row = fresh_row(method);
      row.status = "failed";
      row.reason = sanitize(err.what());
      rows.push_back(std::move(row));
    }
    return rows;
  }

  std::vector<NodePose> anchors(nodes.begin(), nodes.begin() + trial_cfg.n_anchors);
  const Eigen::VectorXd ranges = Eigen::VectorXd::Constant(
      trial_cfg.total_nodes(), trial_cfg.transmission_range);

  for (const auto& method : methods) {
    SweepRow row = fresh_row(method);
    row.h_crlb_m = bound;
    row.energy_j = energy_total;
    row.reason = note;
    try {
      Eigen::MatrixXd estimated;
      if (method == "proposed") {
        const LocalizationResult loc = localize_mds(completed, anchors);
        estimated = loc.absolute;
        row.stress = loc.stress;
      } else if (method == "wcl") {
        estimated = wcl_baseline(graph, anchors, trial_cfg.region_centroid());
      } else {
        throw std::invalid_argument("unknown method '" + method + "'");
      }
      row.rmse_m = rmse(truth, estimated);
      row.energy_error_product = energy_error_product(energy, ranges, truth, estimated);
      if (scatter) scatter->push_back({method, nodes, std::move(estimated)});
    } catch (const std::exception& err) {
      row.status = "failed";
      row.reason = sanitize(err.what());
      row.rmse_m = kNaN;
      row.stress = kNaN;
      row.energy_error_product = kNaN;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

SweepResult run_sweep(const AppConfig& cfg, unsigned threads, bool capture_scatter) {
  cfg.validate();
  const std::size_t points = cfg.sweep.values.size();
  const std::size_t trials = static_cast<std::size_t>(cfg.sweep.trials);
  const std::size_t total = points * trials;

  struct Slot {
    std::vector<SweepRow> rows;
    std::vector<ScatterSet> scatter;
  };
  std::vector<Slot> slots(total);
  std::atomic<std::size_t> next{0};

  auto worker = [&] {
    for (;;) {
      const std::size_t slot = next.fetch_add(1);
      if (slot >= total) return;
      const std::size_t point = slot / trials;
      const std::size_t trial = slot % trials;
      const double value = cfg.sweep.values[point];
      const std::uint64_t seed = substream(cfg.scenario.seed, kSweepTag,
                                           static_cast<std::uint64_t>(point),
                                           static_cast<std::uint64_t>(trial));
      std::vector<ScatterSet>* capture =
          (capture_scatter && slot == 0) ? &slots[slot].scatter : nullptr;
      try {
        const ScenarioConfig point_cfg = apply_axis(cfg.scenario, cfg.sweep.axis, value);
        slots[slot].rows =
            run_trial(point_cfg, cfg.energy, cfg.sweep.methods, value, seed, capture);
      } catch (const std::exception& err) {
        for (const auto& method : cfg.sweep.methods) {
          SweepRow row;
          row.axis_value = value;
          row.trial_seed = seed;
          row.method = method;
          row.status = "failed";
          row.reason = sanitize(err.what());
          slots[slot].rows.push_back(std::move(row));
        }
      }
    }
  };

  unsigned n_workers = threads ? threads : std::thread::hardware_concurrency();
  n_workers = std::max(1u, std::min<unsigned>(n_workers, total ? total : 1));
  std::vector<std::thread> pool;
  for (unsigned i = 1; i < n_workers; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  SweepResult result;
  result.rows.reserve(total * cfg.sweep.methods.size());
  for (auto& slot : slots) {
    for (auto& row : slot.rows) result.rows.push_back(std::move(row));
    for (auto& set : slot.scatter) result.scatter.push_back(std::move(set));
  }
  return result;
}

void emit_csv(const SweepResult& result, const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << kCsvHeader << '\n';
  for (const auto& row : result.rows) {
    out << format_double(row.axis_value) << ',' << row.trial_seed << ','
        << row.method << ',' << format_double(row.rmse_m) << ','
        << format_double(row.h_crlb_m) << ',' << format_double(row.stress) << ','
        << format_double(row.energy_j) << ','
        << format_double(row.energy_error_product) << ',' << row.status << ','
        << sanitize(row.reason) << '\n';
  }
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

std::vector<SweepRow> parse_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader)
    throw std::runtime_error("'" + path + "' does not start with the sweep CSV header");
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_line(line);
    if (fields.size() != 10)
      throw std::runtime_error(path + " line " + std::to_string(line_no) +
                               ": expected 10 fields, got " +
                               std::to_string(fields.size()));
    try {
      SweepRow row;
      row.axis_value = std::stod(fields[0]);
      row.trial_seed = std::stoull(fields[1]);
      row.method = fields[2];
      row.rmse_m = std::stod(fields[3]);
      row.h_crlb_m = std::stod(fields[4]);
      row.stress = std::stod(fields[5]);
      row.energy_j = std::stod(fields[6]);
      row.energy_error_product = std::stod(fields[7]);
      row.status = fields[8];
      row.reason = fields[9];
      rows.push_back(std::move(row));
    } catch (const std::exception&) {
      throw std::runtime_error(path + " line " + std::to_string(line_no) +
                               ": malformed numeric field");
    }
  }
  return rows;
}

std::vector<PointAggregate> aggregate(const SweepResult& result) {
  std::vector<PointAggregate> points;
  std::vector<std::pair<double, std::string>> keys;
  auto index_of = [&](double axis, const std::string& method) {
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i].first == axis && keys[i].second == method) return i;
    keys.emplace_back(axis, method);
    PointAggregate agg;
    agg.axis_value = axis;
    agg.method = method;
    points.push_back(std::move(agg));
    return keys.size() - 1;
  };

  struct Buffers {
    MedianBuffer rmse, stress, bound, energy, eep;
    int ok = 0;
  };
  std::vector<Buffers> buffers;
  for (const auto& row : result.rows) {
    const std::size_t i = index_of(row.axis_value, row.method);
    if (buffers.size() <= i) buffers.resize(i + 1);
    if (row.status != "ok") continue;
    Buffers& b = buffers[i];
    ++b.ok;
    b.rmse.add(row.rmse_m);
    b.stress.add(row.stress);
    b.bound.add(row.h_crlb_m);
    b.energy.add(row.energy_j);
    b.eep.add(row.energy_error_product);
  }
  for (std::size_t i = 0; i < points.size(); ++i) {
    Buffers& b = buffers[i];
    PointAggregate& agg = points[i];
    agg.trials_ok = b.ok;
    agg.rmse_mean = b.rmse.mean();
    agg.rmse_std = b.rmse.stddev();
    agg.rmse_median = b.rmse.median();
    agg.stress_mean = b.stress.mean();
    agg.h_crlb_mean = b.bound.mean();
    agg.energy_mean = b.energy.mean();
    agg.eep_mean = b.eep.mean();
    agg.eep_median = b.eep.median();
  }
  return points;
}

void emit_plot_data(const SweepResult& result, const std::string& dir) {
  std::filesystem::create_directories(dir);
  const auto points = aggregate(result);

  const std::filesystem::path base(dir);
  {
    std::ofstream out(base / "aggregate.txt");
    if (!out) throw std::runtime_error("cannot open aggregate.txt under '" + dir + "'");
    out << "# axis_value method n_ok rmse_mean rmse_std rmse_median stress_mean"
           " h_crlb_mean energy_mean eep_mean eep_median\n";
    for (const auto& p : points) {
      out << format_double(p.axis_value) << ' ' << p.method << ' ' << p.trials_ok
          << ' ' << format_double(p.rmse_mean) << ' ' << format_double(p.rmse_std)
          << ' ' << format_double(p.rmse_median) << ' '
          << format_double(p.stress_mean) << ' ' << format_double(p.h_crlb_mean)
          << ' ' << format_double(p.energy_mean) << ' ' << format_double(p.eep_mean)
          << ' ' << format_double(p.eep_median) << '\n';
    }
    if (!out) throw std::runtime_error("write failure on aggregate.txt");
  }

  for (const auto& set : result.scatter)
    emit_scatter(set, (base / ("scatter_" + set.method + ".txt")).string());
}

void emit_scatter(const ScatterSet& set, const std::string& path) {
  const std::filesystem::path parent = std::filesystem::path(path).parent_path();
  if (!parent.empty()) std::filesystem::create_directories(parent);
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << "# id role true_x true_y true_z est_x est_y est_z error_m\n";
  for (std::size_t i = 0; i < set.nodes.size(); ++i) {
    const NodePose& node = set.nodes[i];
    const Eigen::RowVector3d est = set.estimated.row(static_cast<Eigen::Index>(i));
    const double err = (est.transpose() - node.position).norm();
    out << node.id << ' ' << to_string(node.role) << ' '
        << format_double(node.position.x()) << ' '
        << format_double(node.position.y()) << ' '
        << format_double(node.position.z()) << ' ' << format_double(est.x())
        << ' ' << format_double(est.y()) << ' ' << format_double(est.z()) << ' '
        << format_double(err) << '\n';
  }
  if (!out) throw std::runtime_error("write failure on '" + path + "'");
}

}  // namespace uwloc
