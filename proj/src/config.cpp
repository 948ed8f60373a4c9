#include "qoct/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>

namespace qoct {

namespace {

using nlohmann::json;

void require_keys(const json& j, const std::string& path,
                  const std::set<std::string>& allowed) {
  if (!j.is_object()) throw ConfigError(path + ": expected an object");
  for (const auto& item : j.items()) {
    if (!allowed.count(item.key()))
      throw ConfigError(path + ": unknown key '" + item.key() + "'");
  }
}

double get_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

int get_int(const json& j, const std::string& path) {
  if (!j.is_number_integer()) throw ConfigError(path + ": expected an integer");
  return j.get<int>();
}

std::string get_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path + ": expected a string");
  return j.get<std::string>();
}

std::vector<double> get_number_list(const json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(get_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace

std::string scheme_name(EvolutionScheme scheme) {
  switch (scheme) {
    case EvolutionScheme::Unlimited2: return "unlimited2";
    case EvolutionScheme::Limited2: return "limited2";
    case EvolutionScheme::LimitedSingle: return "limited_single";
    case EvolutionScheme::Qaoa: return "qaoa";
    case EvolutionScheme::Lae: return "lae";
  }
  throw std::logic_error("scheme_name: bad enum");
}

EvolutionScheme scheme_from_name(const std::string& name) {
  if (name == "unlimited2") return EvolutionScheme::Unlimited2;
  if (name == "limited2") return EvolutionScheme::Limited2;
  if (name == "limited_single") return EvolutionScheme::LimitedSingle;
  if (name == "qaoa") return EvolutionScheme::Qaoa;
  if (name == "lae") return EvolutionScheme::Lae;
  throw ConfigError("unknown scheme '" + name + "'");
}

std::vector<double> default_sweep_grid() {
  std::vector<double> grid;
  for (int i = 1; i <= 20; ++i) grid.push_back(i * 0.1);
  for (int i = 105; i <= 115; ++i) grid.push_back(i * 0.01);
  for (int i = 145; i <= 155; ++i) grid.push_back(i * 0.01);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end(),
                         [](double a, double b) { return std::abs(a - b) < 1e-12; }),
             grid.end());
  return grid;
}

std::vector<double> ExperimentConfig::sweep_grid() const {
  return sweep_t.empty() ? default_sweep_grid() : sweep_t;
}

ExperimentConfig parse_config(const json& j) {
  ExperimentConfig cfg;
  require_keys(j, "config",
               {"input", "scheme", "t_final", "steps_per_tau", "tbqcp", "pso",
                "qaoa_p", "sweep", "robustness", "out_dir", "seed", "workers"});

  if (j.contains("input")) {
    const json& in = j["input"];
    require_keys(in, "input", {"a_re", "a_im", "b_re", "b_im"});
    double ar = 1, ai = 0, br = 0, bi = 0;
    if (in.contains("a_re")) ar = get_number(in["a_re"], "input.a_re");
    if (in.contains("a_im")) ai = get_number(in["a_im"], "input.a_im");
    if (in.contains("b_re")) br = get_number(in["b_re"], "input.b_re");
    if (in.contains("b_im")) bi = get_number(in["b_im"], "input.b_im");
    cfg.input = {Complex(ar, ai), Complex(br, bi)};
    if (std::abs(cfg.input.norm_sq() - 1.0) > 1e-12)
      throw ConfigError("input: amplitudes must be normalized");
  }

  if (j.contains("scheme"))
    cfg.scheme = scheme_from_name(get_string(j["scheme"], "scheme"));

  if (j.contains("t_final")) {
    cfg.t_final = get_number(j["t_final"], "t_final");
    if (cfg.t_final <= 0.0) throw ConfigError("t_final: must be positive");
  }
  if (j.contains("steps_per_tau")) {
    cfg.steps_per_tau = get_int(j["steps_per_tau"], "steps_per_tau");
    if (cfg.steps_per_tau < 2) throw ConfigError("steps_per_tau: must be >= 2");
  }

  if (j.contains("tbqcp")) {
    const json& t = j["tbqcp"];
    require_keys(t, "tbqcp",
                 {"eta", "max_iters", "convergence_tol", "clamp_mode",
                  "snapshot_stride"});
    if (t.contains("eta")) {
      cfg.tbqcp.eta = get_number(t["eta"], "tbqcp.eta");
      if (cfg.tbqcp.eta <= 0.0) throw ConfigError("tbqcp.eta: must be positive");
    }
    if (t.contains("max_iters")) {
      cfg.tbqcp.max_iters = get_int(t["max_iters"], "tbqcp.max_iters");
      if (cfg.tbqcp.max_iters < 1)
        throw ConfigError("tbqcp.max_iters: must be >= 1");
    }
    if (t.contains("convergence_tol"))
      cfg.tbqcp.convergence_tol =
          get_number(t["convergence_tol"], "tbqcp.convergence_tol");
    if (t.contains("clamp_mode")) {
      const std::string m = get_string(t["clamp_mode"], "tbqcp.clamp_mode");
      if (m == "project")
        cfg.tbqcp.clamp_mode = ClampMode::Project;
      else if (m == "freeze_on_cross")
        cfg.tbqcp.clamp_mode = ClampMode::FreezeOnCross;
      else
        throw ConfigError("tbqcp.clamp_mode: expected 'project' or 'freeze_on_cross'");
    }
    if (t.contains("snapshot_stride")) {
      cfg.tbqcp.snapshot_stride =
          get_int(t["snapshot_stride"], "tbqcp.snapshot_stride");
      if (cfg.tbqcp.snapshot_stride < 1)
        throw ConfigError("tbqcp.snapshot_stride: must be >= 1");
    }
  }

  if (j.contains("pso")) {
    const json& p = j["pso"];
    require_keys(p, "pso",
                 {"swarm_size", "iterations", "inertia", "cognitive", "social",
                  "restarts"});
    if (p.contains("swarm_size")) {
      cfg.pso.swarm_size = get_int(p["swarm_size"], "pso.swarm_size");
      if (cfg.pso.swarm_size < 2) throw ConfigError("pso.swarm_size: must be >= 2");
    }
    if (p.contains("iterations"))
      cfg.pso.iterations = get_int(p["iterations"], "pso.iterations");
    if (p.contains("inertia"))
      cfg.pso.inertia = get_number(p["inertia"], "pso.inertia");
    if (p.contains("cognitive"))
      cfg.pso.cognitive = get_number(p["cognitive"], "pso.cognitive");
    if (p.contains("social"))
      cfg.pso.social = get_number(p["social"], "pso.social");
    if (p.contains("restarts")) {
      cfg.pso.restarts = get_int(p["restarts"], "pso.restarts");
      if (cfg.pso.restarts < 1) throw ConfigError("pso.restarts: must be >= 1");
    }
    if (cfg.pso.inertia <= 0.0 || cfg.pso.cognitive <= 0.0 ||
        cfg.pso.social <= 0.0)
      throw ConfigError("pso: coefficients must be positive");
  }

  if (j.contains("qaoa_p")) {
    if (!j["qaoa_p"].is_array()) throw ConfigError("qaoa_p: expected an array");
    cfg.qaoa_p.clear();
    for (std::size_t i = 0; i < j["qaoa_p"].size(); ++i) {
      const int p = get_int(j["qaoa_p"][i], "qaoa_p[" + std::to_string(i) + "]");
      if (p < 1 || p > 6) throw ConfigError("qaoa_p: entries must be in 1..6");
      cfg.qaoa_p.push_back(p);
    }
    if (cfg.qaoa_p.empty()) throw ConfigError("qaoa_p: must not be empty");
  }

  if (j.contains("sweep")) {
    const json& s = j["sweep"];
    require_keys(s, "sweep", {"t_values"});
    if (s.contains("t_values")) {
      cfg.sweep_t = get_number_list(s["t_values"], "sweep.t_values");
      for (double t : cfg.sweep_t)
        if (t <= 0.0) throw ConfigError("sweep.t_values: must be positive");
    }
  }

  if (j.contains("robustness")) {
    const json& r = j["robustness"];
    require_keys(r, "robustness", {"t_final", "alphas", "schemes"});
    if (r.contains("t_final")) {
      cfg.robustness_t = get_number(r["t_final"], "robustness.t_final");
      if (cfg.robustness_t <= 0.0)
        throw ConfigError("robustness.t_final: must be positive");
    }
    if (r.contains("alphas"))
      cfg.robustness_alphas = get_number_list(r["alphas"], "robustness.alphas");
    if (r.contains("schemes")) {
      if (!r["schemes"].is_array())
        throw ConfigError("robustness.schemes: expected an array");
      cfg.robustness_schemes.clear();
      for (std::size_t i = 0; i < r["schemes"].size(); ++i)
        cfg.robustness_schemes.push_back(scheme_from_name(get_string(
            r["schemes"][i], "robustness.schemes[" + std::to_string(i) + "]")));
    }
  }

  if (j.contains("out_dir")) cfg.out_dir = get_string(j["out_dir"], "out_dir");
  if (j.contains("seed")) {
    if (!j["seed"].is_number_integer()) throw ConfigError("seed: expected an integer");
    cfg.seed = j["seed"].get<std::uint64_t>();
  }
  if (j.contains("workers")) {
    cfg.workers = get_int(j["workers"], "workers");
    if (cfg.workers < 0) throw ConfigError("workers: must be >= 0");
  }
  return cfg;
}

ExperimentConfig load_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config parse error: ") + e.what());
  }
  return parse_config(j);
}

nlohmann::json config_to_json(const ExperimentConfig& cfg) {
  json j;
  j["input"] = {{"a_re", cfg.input.a.real()},
                {"a_im", cfg.input.a.imag()},
                {"b_re", cfg.input.b.real()},
                {"b_im", cfg.input.b.imag()}};
  j["scheme"] = scheme_name(cfg.scheme);
  j["t_final"] = cfg.t_final;
  j["steps_per_tau"] = cfg.steps_per_tau;
  j["tbqcp"] = {{"eta", cfg.tbqcp.eta},
                {"max_iters", cfg.tbqcp.max_iters},
                {"convergence_tol", cfg.tbqcp.convergence_tol},
                {"clamp_mode", cfg.tbqcp.clamp_mode == ClampMode::Project
                                   ? "project"
                                   : "freeze_on_cross"},
                {"snapshot_stride", cfg.tbqcp.snapshot_stride}};
  j["pso"] = {{"swarm_size", cfg.pso.swarm_size},
              {"iterations", cfg.pso.iterations},
              {"inertia", cfg.pso.inertia},
              {"cognitive", cfg.pso.cognitive},
              {"social", cfg.pso.social},
              {"restarts", cfg.pso.restarts}};
  j["qaoa_p"] = cfg.qaoa_p;
  j["sweep"] = {{"t_values", cfg.sweep_grid()}};
  json schemes = json::array();
  for (EvolutionScheme s : cfg.robustness_schemes)
    schemes.push_back(scheme_name(s));
  j["robustness"] = {{"t_final", cfg.robustness_t},
                     {"alphas", cfg.robustness_alphas},
                     {"schemes", schemes}};
  j["out_dir"] = cfg.out_dir;
  j["seed"] = cfg.seed;
  j["workers"] = cfg.workers;
  return j;
}

}  // namespace qoct
