#ifndef QOCT_QAOA_HPP
#define QOCT_QAOA_HPP

#include <cstdint>

#include "qoct/propagate.hpp"

namespace qoct {

// Alternation timings: p pulses of H1 (gammas) interleaved with p pulses of
// H0 (betas), applied H1-first. All durations nonnegative, summing to the
// horizon T.
struct QaoaParams {
  RealVector gammas;
  RealVector betas;

  int p() const { return static_cast<int>(gammas.size()); }
  double total_time() const { return gammas.sum() + betas.sum(); }
};

struct PsoConfig {
  int swarm_size = 50;
  int iterations = 300;
  double inertia = 0.7298;
  double cognitive = 1.4960;
  double social = 1.4960;
  int restarts = 8;
  std::uint64_t rng_seed = 1;
};

struct PsoResult {
  QaoaParams params;
  double fidelity = 0.0;
  bool swarm_collapsed = false;  // spread below 1e-12 before the budget ran out
};

/// |psi> = prod_j exp(-i H0 beta_j) exp(-i H1 gamma_j) |psi0>, exact block
/// exponentials from the cached eigendecompositions of H0 and H1.
ComplexVector qaoa_evolve(const ProtocolSpec& spec, const QaoaParams& params);

/// Particle-swarm search over the 2p nonnegative durations, repaired onto
/// the simplex sum = T by rescaling after every position update.
/// Deterministic for a fixed seed; best over cfg.restarts independent swarms.
PsoResult pso_optimize(const ProtocolSpec& spec, double t_final, int p,
                       const PsoConfig& cfg);

/// Piecewise 0/1 schedules on the grid (eps1 = 1 during gamma blocks,
/// eps0 = 1 during beta blocks). Block boundaries are rounded to the nearest
/// grid edge; blocks shorter than dt collapse and are counted in
/// merged_blocks when the pointer is given.
ControlField qaoa_to_controls(const QaoaParams& params, const TimeGrid& grid,
                              int* merged_blocks = nullptr);

}  // namespace qoct

#endif
