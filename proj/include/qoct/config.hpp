#ifndef QOCT_CONFIG_HPP
#define QOCT_CONFIG_HPP

#include <filesystem>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qoct/model.hpp"
#include "qoct/qaoa.hpp"
#include "qoct/tbqcp.hpp"

namespace qoct {

// The five temporal evolution schemes of the benchmark.
enum class EvolutionScheme {
  Unlimited2 = 1,  // amplitude-unlimited two-control optimization
  Limited2 = 2,    // amplitude-limited two-control optimization
  LimitedSingle = 3,  // single limited control, eps1 = 1 - eps0
  Qaoa = 4,
  Lae = 5,  // linear adiabatic ramp, no optimization
};

std::string scheme_name(EvolutionScheme scheme);
EvolutionScheme scheme_from_name(const std::string& name);

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ExperimentConfig {
  InputQubit input;
  EvolutionScheme scheme = EvolutionScheme::Limited2;
  double t_final = 1.0;
  int steps_per_tau = 2000;
  TbqcpConfig tbqcp;
  PsoConfig pso;
  std::vector<int> qaoa_p = {1};
  std::vector<double> sweep_t;  // empty = default grid (see default_sweep_grid)
  double robustness_t = 1.6;
  std::vector<double> robustness_alphas = {0.0,  0.02, 0.04,
                                           0.06, 0.08, 0.10};
  std::vector<EvolutionScheme> robustness_schemes = {
      EvolutionScheme::Unlimited2, EvolutionScheme::Limited2,
      EvolutionScheme::LimitedSingle, EvolutionScheme::Qaoa};
  std::string out_dir = ".";
  std::uint64_t seed = 1;
  int workers = 0;  // 0 = hardware concurrency

  std::vector<double> sweep_grid() const;
};

/// 0.1 .. 2.0 in steps of 0.1, refined to 0.01 near the 1.11 and 1.5
/// transitions.
std::vector<double> default_sweep_grid();

/// Strict parse: unknown keys anywhere are rejected with the offending path.
ExperimentConfig parse_config(const nlohmann::json& j);
ExperimentConfig load_config_file(const std::filesystem::path& path);

/// Canonical JSON form of a config; hashed into the run manifests.
nlohmann::json config_to_json(const ExperimentConfig& cfg);

}  // namespace qoct

#endif
