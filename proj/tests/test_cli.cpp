#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include <doctest.h>
#include <nlohmann/json.hpp>

#include "qoct/io.hpp"
#include "qoct/runner.hpp"

using namespace qoct;
using nlohmann::json;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "qoct_tests" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json read_manifest(const fs::path& dir) {
  return json::parse(slurp(dir / "manifest.json"));
}

// Small, fast settings shared by the subcommand tests.
ExperimentConfig tiny_config() {
  ExperimentConfig cfg;
  cfg.steps_per_tau = 200;
  cfg.tbqcp.max_iters = 40;
  cfg.tbqcp.snapshot_stride = 20;
  cfg.pso.swarm_size = 10;
  cfg.pso.iterations = 30;
  cfg.pso.restarts = 2;
  cfg.sweep_t = {0.4, 0.8};
  cfg.robustness_t = 0.8;
  cfg.robustness_alphas = {0.0, 0.1};
  cfg.robustness_schemes = {EvolutionScheme::Limited2, EvolutionScheme::Lae};
  cfg.workers = 1;
  return cfg;
}

int run_cli(const std::string& args) {
  const std::string cmd = std::string(QOCT_CLI_PATH) + " " + args +
                          " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

}  // namespace

TEST_CASE("cmd_optimize writes the full artifact set") {
  ExperimentConfig cfg = tiny_config();
  cfg.scheme = EvolutionScheme::Limited2;
  cfg.t_final = 0.6;
  cfg.tbqcp.max_iters = 2000;
  cfg.tbqcp.convergence_tol = 1e-7;
  const fs::path dir = fresh_dir("optimize");
  cfg.out_dir = dir.string();

  CHECK(cmd_optimize(cfg) == 0);
  CHECK(fs::exists(dir / "controls.csv"));
  CHECK(fs::exists(dir / "fidelity_trace.csv"));
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(fs::exists(dir / "controls_iter_000000.csv"));

  const json m = read_manifest(dir);
  CHECK(m["scheme"] == "limited2");
  CHECK(m["converged"] == true);
  // T = 0.6 sits below the critical time: the bounded optimum saturates
  // both controls at 1 and tops out near 0.61.
  CHECK(m["final_fidelity"].get<double>() > 0.6);
  CHECK(m["final_fidelity"].get<double>() < 0.75);
  CHECK(m["config_hash"] ==
        fnv1a_hex(m["config"].dump()));
  CHECK(m.contains("cubic_fit"));

  // Header plus one row per control sample.
  const std::string controls = slurp(dir / "controls.csv");
  CHECK(controls.rfind("t,eps0,eps1\n", 0) == 0);
  CHECK(std::count(controls.begin(), controls.end(), '\n') == 121);
}

TEST_CASE("cmd_optimize reports budget exhaustion with exit code 2") {
  ExperimentConfig cfg = tiny_config();
  cfg.scheme = EvolutionScheme::Unlimited2;
  cfg.t_final = 1.0;
  cfg.tbqcp.max_iters = 5;
  cfg.tbqcp.convergence_tol = 1e-12;
  const fs::path dir = fresh_dir("optimize_budget");
  cfg.out_dir = dir.string();

  CHECK(cmd_optimize(cfg) == 2);
  CHECK(read_manifest(dir)["converged"] == false);
  CHECK(fs::exists(dir / "controls.csv"));  // artifacts still written
}

TEST_CASE("cmd_optimize with the linear ramp skips the iteration trace") {
  ExperimentConfig cfg = tiny_config();
  cfg.scheme = EvolutionScheme::Lae;
  cfg.t_final = 1.0;
  const fs::path dir = fresh_dir("optimize_lae");
  cfg.out_dir = dir.string();
  CHECK(cmd_optimize(cfg) == 0);
  CHECK_FALSE(fs::exists(dir / "fidelity_trace.csv"));
  CHECK(read_manifest(dir)["iterations_run"] == 0);
}

TEST_CASE("cmd_sweep output is deterministic byte for byte") {
  ExperimentConfig cfg = tiny_config();
  const fs::path dir_a = fresh_dir("sweep_a");
  const fs::path dir_b = fresh_dir("sweep_b");

  cfg.out_dir = dir_a.string();
  CHECK(cmd_sweep(cfg) == 0);
  cfg.out_dir = dir_b.string();
  cfg.workers = 0;  // worker count must not affect the bytes
  CHECK(cmd_sweep(cfg) == 0);

  for (const char* name : {"sweep.csv", "cost.csv", "qaoa_per_p.csv"})
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));

  const std::string sweep = slurp(dir_a / "sweep.csv");
  CHECK(sweep.rfind("T,F_scheme1,F_scheme2,F_scheme3,F_scheme4,F_scheme5,"
                    "F_doublebang_sim,F_doublebang_formula\n",
                    0) == 0);
  CHECK(std::count(sweep.begin(), sweep.end(), '\n') == 3);

  const json m = read_manifest(dir_a);
  CHECK(m["critical_time"].get<double>() == doctest::Approx(1.11).epsilon(0.02));
  CHECK(m["n_sweep_points"] == 2);
}

TEST_CASE("cmd_sweep changes with the seed") {
  ExperimentConfig cfg = tiny_config();
  cfg.sweep_t = {0.8};
  const fs::path dir_a = fresh_dir("sweep_seed_a");
  const fs::path dir_b = fresh_dir("sweep_seed_b");
  cfg.out_dir = dir_a.string();
  CHECK(cmd_sweep(cfg) == 0);
  cfg.out_dir = dir_b.string();
  cfg.seed = 999;
  CHECK(cmd_sweep(cfg) == 0);
  // The QAOA search is seeded; manifests must carry the differing configs.
  CHECK(read_manifest(dir_a)["config_hash"] !=
        read_manifest(dir_b)["config_hash"]);
}

TEST_CASE("cmd_robustness writes one table per scheme") {
  ExperimentConfig cfg = tiny_config();
  const fs::path dir = fresh_dir("robustness");
  cfg.out_dir = dir.string();
  CHECK(cmd_robustness(cfg) == 0);

  for (const char* name : {"robustness_limited2.csv", "robustness_lae.csv"}) {
    const std::string table = slurp(dir / name);
    CHECK(table.rfind("alpha,F_x1,F_x2,F_x3,F_y1,F_y2,F_y3,F_z1,F_z2,F_z3,"
                      "worst\n",
                      0) == 0);
    CHECK(std::count(table.begin(), table.end(), '\n') == 3);
  }

  const json m = read_manifest(dir);
  const double clean =
      m["schemes"]["limited2"]["error_free_fidelity"].get<double>();
  // The alpha = 0 row reproduces the error-free fidelity.
  std::istringstream table(slurp(dir / "robustness_limited2.csv"));
  std::string line;
  std::getline(table, line);  // header
  std::getline(table, line);  // alpha = 0 row
  const std::string worst = line.substr(line.rfind(',') + 1);
  CHECK(std::stod(worst) == doctest::Approx(clean).epsilon(1e-11));
}

TEST_CASE("cmd_qaoa writes per-p parameters and controls") {
  ExperimentConfig cfg = tiny_config();
  cfg.t_final = 1.0;
  cfg.qaoa_p = {1, 2};
  const fs::path dir = fresh_dir("qaoa");
  cfg.out_dir = dir.string();
  CHECK(cmd_qaoa(cfg) == 0);
  CHECK(fs::exists(dir / "controls_p1.csv"));
  CHECK(fs::exists(dir / "controls_p2.csv"));

  const json m = read_manifest(dir);
  REQUIRE(m["results"].size() == 2);
  for (const json& r : m["results"]) {
    const int p = r["p"].get<int>();
    CHECK(r["gammas"].size() == static_cast<std::size_t>(p));
    double total = 0.0;
    for (const json& g : r["gammas"]) total += g.get<double>();
    for (const json& b : r["betas"]) total += b.get<double>();
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("cmd_diagnose reports optimality residuals") {
  ExperimentConfig cfg = tiny_config();
  cfg.scheme = EvolutionScheme::Limited2;
  cfg.t_final = 0.6;
  cfg.tbqcp.max_iters = 2000;
  cfg.tbqcp.convergence_tol = 1e-8;
  const fs::path dir = fresh_dir("diagnose");
  cfg.out_dir = dir.string();
  CHECK(cmd_diagnose(cfg) == 0);
  CHECK(fs::exists(dir / "diagnostics.csv"));
  CHECK(fs::exists(dir / "trajectory.csv"));
  CHECK(fs::exists(dir / "controls.csv"));

  const json res = read_manifest(dir)["residuals"];
  // Saturated double-bang regime: constant positive control Hamiltonian.
  CHECK(res["cham_mean"].get<double>() > 0.0);
  CHECK(res["cham_stddev"].get<double>() <= 1e-4);
  CHECK(res["bound_violations"] == 0);

  const std::string traj = slurp(dir / "trajectory.csv");
  CHECK(traj.rfind("t,re0,im0,re1,im1", 0) == 0);
}

TEST_CASE("cli binary honors flags and exit codes") {
  const fs::path dir = fresh_dir("cli_binary");

  SUBCASE("invalid config file exits 1") {
    const fs::path bad = dir / "bad.json";
    write_text_file(bad, "{\"not_a_key\": 1}\n");
    CHECK(run_cli("optimize --config " + bad.string()) == 1);
    write_text_file(bad, "{broken\n");
    CHECK(run_cli("optimize --config " + bad.string()) == 1);
  }

  SUBCASE("missing subcommand exits nonzero") {
    CHECK(run_cli("") != 0);
  }

  SUBCASE("optimize runs from a config file with flag overrides") {
    const fs::path conf = dir / "run.json";
    write_text_file(conf, json{{"scheme", "lae"},
                               {"t_final", 0.5},
                               {"steps_per_tau", 100}}
                              .dump());
    const fs::path out = dir / "out";
    CHECK(run_cli("optimize --config " + conf.string() + " --out " +
                  out.string() + " --seed 7 --workers 1") == 0);
    const json m = read_manifest(out);
    CHECK(m["config"]["seed"] == 7);
    CHECK(m["config"]["workers"] == 1);
    CHECK(m["config"]["out_dir"] == out.string());
  }
}
