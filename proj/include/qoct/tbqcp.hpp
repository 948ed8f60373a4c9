#ifndef QOCT_TBQCP_HPP
#define QOCT_TBQCP_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "qoct/pmp.hpp"

namespace qoct {

enum class Scheme { Unlimited2, Limited2, LimitedSingle };

enum class ClampMode {
  Project,        // re-project into [0,1] every iteration
  FreezeOnCross,  // pin a sample to the first bound it crosses, permanently
};

struct TbqcpConfig {
  double eta = 5e-3;
  int max_iters = 2000;
  Scheme scheme = Scheme::Limited2;
  ClampMode clamp_mode = ClampMode::Project;
  double convergence_tol = 1e-9;  // on |dF| over 10 consecutive iterations
  int snapshot_stride = 100;
};

struct ControlSnapshot {
  int iteration;
  RealVector eps0;
  RealVector eps1;
};

struct OptimizationResult {
  ControlField controls;
  std::vector<double> fidelity_trace;  // entry 0 = initial (LAE) fidelity
  ComplexVector final_state;
  int iterations_run = 0;
  bool converged = false;
  PmpDiagnostics diagnostics;
  std::vector<ControlSnapshot> snapshots;
  // Control corrections f_k of the last sweep, one sample per step; near
  // convergence these line up with the gradients Phi_k.
  RealVector last_f0;
  RealVector last_f1;

  double final_fidelity() const { return fidelity_trace.back(); }
};

// Frozen-bound marker per control sample: -1 free, 0 or 1 once pinned.
using FrozenMask = std::vector<std::int8_t>;

/// Bound enforcement for one control sample. In FreezeOnCross mode the
/// frozen marker is updated on the first crossing and wins thereafter.
double clamp_control(double eps, ClampMode mode, std::int8_t& frozen);

/// Turns the raw corrections (f0, f1) into control increments for the given
/// scheme. LimitedSingle projects through the constraint eps1 = 1 - eps0,
/// so the increments are +/- eta*(f0 - f1).
std::pair<double, double> apply_scheme_coupling(double f0, double f1,
                                                Scheme scheme, double eta);

/// Monotonic TBQCP optimization starting from the LAE ramp. Each iteration
/// evolves the observable backward under the current controls, then sweeps
/// forward updating the controls self-consistently step by step.
/// Throws std::runtime_error if an iteration decreases the fidelity by more
/// than 1e-10 (implementation or step-size fault).
OptimizationResult tbqcp_iterate(const ProtocolSpec& spec,
                                 const TbqcpConfig& config,
                                 const TimeGrid& grid);

}  // namespace qoct

#endif
