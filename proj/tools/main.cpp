#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "qoct/runner.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Two-control quantum annealing benchmark runner"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir;
  long long seed = -1;
  int workers = -1;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON config file");
    sub->add_option("--out", out_dir, "output directory (overrides config)");
    sub->add_option("--seed", seed, "RNG seed (overrides config)");
    sub->add_option("--workers", workers, "worker threads (overrides config)");
  };

  CLI::App* optimize = app.add_subcommand(
      "optimize", "run one scheme at one final time, write controls and trace");
  CLI::App* sweep = app.add_subcommand(
      "sweep", "fidelity and energy-cost sweep over final times, all schemes");
  CLI::App* robustness = app.add_subcommand(
      "robustness", "systematic-error scan on converged controls");
  CLI::App* qaoa =
      app.add_subcommand("qaoa", "particle-swarm QAOA parameter search");
  CLI::App* diagnose = app.add_subcommand(
      "diagnose", "Pontryagin diagnostics and optimality residuals");
  for (CLI::App* sub : {optimize, sweep, robustness, qaoa, diagnose})
    add_common(sub);

  CLI11_PARSE(app, argc, argv);

  qoct::ExperimentConfig cfg;
  try {
    if (!config_path.empty()) cfg = qoct::load_config_file(config_path);
    if (!out_dir.empty()) cfg.out_dir = out_dir;
    if (seed >= 0) cfg.seed = static_cast<std::uint64_t>(seed);
    if (workers >= 0) cfg.workers = workers;
  } catch (const qoct::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 1;
  }

  try {
    if (optimize->parsed()) return qoct::cmd_optimize(cfg);
    if (sweep->parsed()) return qoct::cmd_sweep(cfg);
    if (robustness->parsed()) return qoct::cmd_robustness(cfg);
    if (qaoa->parsed()) return qoct::cmd_qaoa(cfg);
    if (diagnose->parsed()) return qoct::cmd_diagnose(cfg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 1;
}
