#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "uwloc/completion.hpp"
#include "uwloc/config.hpp"
#include "uwloc/localization.hpp"
#include "uwloc/metrics.hpp"
#include "uwloc/recipes.hpp"
#include "uwloc/sweep.hpp"

namespace {

using namespace uwloc;

std::vector<std::string> split_csv(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (c == ',') {
      out.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

struct Options {
  std::string config_path;
  std::string out_dir = "out";
  std::uint64_t seed = 0;
  int trials = 0;
  std::string methods;
  unsigned threads = 1;
  bool scatter = false;
  std::string recipe_id;
};

bool given(const CLI::App* sub, const std::string& name) {
  const CLI::Option* option = sub->get_option_no_throw(name);
  return option && option->count() > 0;
}

AppConfig load_app(const CLI::App* sub, const Options& opt) {
  AppConfig app;
  if (!opt.config_path.empty()) app = load_config(opt.config_path);
  if (given(sub, "--seed")) app.scenario.seed = opt.seed;
  if (given(sub, "--trials")) app.sweep.trials = opt.trials;
  if (given(sub, "--methods")) app.sweep.methods = split_csv(opt.methods);
  app.validate();
  return app;
}

int do_sweep(const CLI::App* sub, const Options& opt) {
  const AppConfig app = load_app(sub, opt);
  const SweepResult result = run_sweep(app, opt.threads, opt.scatter);

  const std::filesystem::path out(opt.out_dir);
  emit_csv(result, (out / "results.csv").string());
  emit_plot_data(result, opt.out_dir);

  std::size_t failed = 0;
  for (const auto& row : result.rows)
    if (row.status != "ok") ++failed;
  std::printf("wrote %s (%zu rows, %zu failed)\n",
              (out / "results.csv").string().c_str(), result.rows.size(), failed);
  std::printf("wrote %s\n", (out / "aggregate.txt").string().c_str());
  for (const auto& set : result.scatter)
    std::printf("wrote %s\n",
                (out / ("scatter_" + set.method + ".txt")).string().c_str());
  return 0;
}

int do_scenario_dump(const CLI::App* sub, const Options& opt) {
  const AppConfig app = load_app(sub, opt);
  const ScenarioConfig& cfg = app.scenario;

  const auto nodes = generate_scenario(cfg);
  const auto obs = synthesize_observations(nodes, cfg);
  const Graph graph = build_graph(obs, cfg.total_nodes());
  const CompletedDistanceMatrix completed = complete_matrix(graph);

  const std::filesystem::path out(opt.out_dir);
  std::filesystem::create_directories(out);
  {
    std::ofstream mat(out / "completed_matrix.csv");
    if (!mat) throw std::runtime_error("cannot open completed_matrix.csv");
    write_matrix_csv(completed, mat);
  }
  std::printf("scenario: %d nodes, %zu observations\n", cfg.total_nodes(),
              obs.size());
  std::printf("wrote %s\n", (out / "completed_matrix.csv").string().c_str());

  const std::vector<NodePose> anchors(nodes.begin(),
                                      nodes.begin() + cfg.n_anchors);
  const Eigen::MatrixXd truth = positions_matrix(nodes);
  for (const auto& method : app.sweep.methods) {
    Eigen::MatrixXd estimated;
    if (method == "proposed")
      estimated = localize_mds(completed, anchors).absolute;
    else if (method == "wcl")
      estimated = wcl_baseline(graph, anchors, cfg.region_centroid());
    else
      throw std::invalid_argument("unknown method '" + method + "'");
    const double err = rmse(truth, estimated);
    const auto path = (out / ("scatter_" + method + ".txt")).string();
    emit_scatter({method, nodes, std::move(estimated)}, path);
    std::printf("wrote %s (rmse %.9g m)\n", path.c_str(), err);
  }
  return 0;
}

int do_crlb(const CLI::App* sub, const Options& opt) {
  const AppConfig app = load_app(sub, opt);
  const auto nodes = generate_scenario(app.scenario);
  const auto obs = synthesize_observations(nodes, app.scenario);
  const CrlbReport report = observation_bound(app.scenario, nodes, obs);

  std::printf("h_crlb_m %.9g\n", report.h_crlb);
  std::printf("raw_trace_m2 %.9g\n", report.raw_trace);
  std::printf("# id role bound_m\n");
  for (const auto& node : nodes)
    std::printf("%d %s %.9g\n", node.id, to_string(node.role),
                report.per_node_bound[node.id]);
  return 0;
}

int do_recipe(const CLI::App* sub, const Options& opt) {
  const FigureId id = figure_from_string(opt.recipe_id);
  const std::string out = given(sub, "--out")
                              ? opt.out_dir
                              : (std::filesystem::path("out") / opt.recipe_id).string();
  const RecipeReport report = run_recipe(id, out, opt.threads);

  for (const auto& check : report.checks)
    std::printf("%s  %s: %s\n", check.passed ? "PASS" : "FAIL",
                check.name.c_str(), check.detail.c_str());
  for (const auto& artifact : report.artifacts)
    std::printf("wrote %s\n", artifact.c_str());
  std::printf("%s: %s\n", to_string(id).c_str(),
              report.passed ? "all checks passed" : "checks FAILED");
  return report.passed ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App cli{"Hybrid underwater sensor network localization toolkit"};
  cli.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", opt.config_path,
                    "key = value config file (defaults when omitted)");
    sub->add_option("--seed", opt.seed, "override the scenario seed");
    sub->add_option("--out", opt.out_dir, "output directory")
        ->capture_default_str();
  };

  CLI::App* sweep_cmd = cli.add_subcommand(
      "sweep", "run a Monte-Carlo sweep; write results.csv and plot data");
  add_common(sweep_cmd);
  sweep_cmd->add_option("--trials", opt.trials, "trials per sweep point");
  sweep_cmd->add_option("--methods", opt.methods,
                        "comma-separated subset of proposed,wcl");
  sweep_cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)");
  sweep_cmd->add_flag("--scatter", opt.scatter,
                      "also write scatter files for the first trial");

  CLI::App* dump_cmd = cli.add_subcommand(
      "scenario-dump",
      "generate one scenario; write the completed matrix and scatter files");
  add_common(dump_cmd);
  dump_cmd->add_option("--methods", opt.methods,
                       "comma-separated subset of proposed,wcl");

  CLI::App* crlb_cmd = cli.add_subcommand(
      "crlb", "print the position-error lower bound for one scenario");
  crlb_cmd->add_option("--config", opt.config_path,
                       "key = value config file (defaults when omitted)");
  crlb_cmd->add_option("--seed", opt.seed, "override the scenario seed");

  CLI::App* recipe_cmd = cli.add_subcommand(
      "recipe", "run a canned experiment preset and check its trend");
  recipe_cmd->add_option("--id", opt.recipe_id, "one of fig3..fig9")->required();
  recipe_cmd->add_option("--out", opt.out_dir, "output directory (default out/<id>)");
  recipe_cmd->add_option("--threads", opt.threads, "worker threads (0 = auto)");

  int rc = 0;
  sweep_cmd->callback([&] { rc = do_sweep(sweep_cmd, opt); });
  dump_cmd->callback([&] { rc = do_scenario_dump(dump_cmd, opt); });
  crlb_cmd->callback([&] { rc = do_crlb(crlb_cmd, opt); });
  recipe_cmd->callback([&] { rc = do_recipe(recipe_cmd, opt); });

  try {
    cli.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return cli.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return rc;
}
