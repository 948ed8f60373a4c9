#ifndef QOCT_RUNNER_HPP
#define QOCT_RUNNER_HPP

#include "qoct/config.hpp"
#include "qoct/metrics.hpp"

namespace qoct {

// One temporal evolution scheme evaluated at one horizon.
struct SchemeRun {
  EvolutionScheme scheme = EvolutionScheme::Lae;
  double t_final = 0.0;
  double fidelity = 0.0;
  double cost = 0.0;
  ControlField controls;
  int iterations = 0;
  bool converged = true;
  std::vector<double> trace;                       // TBQCP schemes
  std::vector<ControlSnapshot> snapshots;          // TBQCP schemes
  QaoaParams qaoa_params;                          // QAOA only
  int qaoa_best_p = 0;
  std::vector<std::pair<int, double>> qaoa_per_p;  // (p, best F)
};

SchemeRun run_scheme(const ProtocolSpec& spec, const ExperimentConfig& cfg,
                     EvolutionScheme scheme, double t_final);

// Subcommand entry points. Return the process exit code:
// 0 success/converged, 2 iteration budget exhausted (artifacts still written).
int cmd_optimize(const ExperimentConfig& cfg);
int cmd_sweep(const ExperimentConfig& cfg);
int cmd_robustness(const ExperimentConfig& cfg);
int cmd_qaoa(const ExperimentConfig& cfg);
int cmd_diagnose(const ExperimentConfig& cfg);

}  // namespace qoct

#endif
