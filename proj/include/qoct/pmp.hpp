#ifndef QOCT_PMP_HPP
#define QOCT_PMP_HPP

#include "qoct/propagate.hpp"

namespace qoct {

// Pontryagin diagnostics sampled at the grid nodes (n_steps + 1 points).
// Node i pairs with the control sample of the step to its right; the final
// node reuses the last step's sample.
//
// Sign convention: the costate lambda evolves backward from O|psi(T)> under
// the same Schroedinger equation as psi, and Phi_k(t) = 2 Im<lambda|H_k|psi>
// is the functional gradient dJ/d eps_k(t) (pinned by the finite-difference
// property test).
struct PmpDiagnostics {
  TimeGrid grid;
  RealVector phi0;  // gradient w.r.t. eps0
  RealVector phi1;  // gradient w.r.t. eps1
  RealVector cham;  // eps0*phi0 + eps1*phi1
  RealVector xi;    // 2 Re<lambda|[H1,H0]|psi>
  StateTrajectory lambda_traj;
};

struct PmpResiduals {
  double cham_mean = 0.0;
  double cham_stddev = 0.0;          // constancy-of-motion check
  double phi0_at_start = 0.0;        // should vanish at an optimum
  double phi1_at_end = 0.0;          // should vanish at an optimum
  int bound_violations = 0;          // steps breaking the sign/bound rules
  double tol = 1e-4;
  bool consistent() const { return bound_violations == 0; }
};

/// Costate trajectory: lambda(T) = O psi(T), evolved backward with the same
/// step unitaries as the forward evolution.
StateTrajectory costate_backward(const ProtocolSpec& spec,
                                 const ControlField& controls,
                                 const ComplexVector& psi_final);

PmpDiagnostics switching_functions(const ProtocolSpec& spec,
                                   const ControlField& controls,
                                   const StateTrajectory& psi_traj,
                                   const StateTrajectory& lambda_traj);

/// Optimality-condition report: constancy of the control Hamiltonian and
/// per-step consistency of the gradient signs with the control bounds
/// (Phi_k > tol requires eps_k = 1, Phi_k < -tol requires eps_k = 0,
/// interior eps_k requires |Phi_k| <= tol).
PmpResiduals pmp_residuals(const PmpDiagnostics& diag,
                           const ControlField& controls, double tol = 1e-4);

}  // namespace qoct

#endif
