#include "qoct/tbqcp.hpp"

#include <cmath>
#include <sstream>

namespace qoct {

double clamp_control(double eps, ClampMode mode, std::int8_t& frozen) {
  if (mode == ClampMode::FreezeOnCross) {
    if (frozen >= 0) return static_cast<double>(frozen);
    if (eps > 1.0) {
      frozen = 1;
      return 1.0;
    }
    if (eps < 0.0) {
      frozen = 0;
      return 0.0;
    }
    return eps;
  }
  return std::min(std::max(eps, 0.0), 1.0);
}

std::pair<double, double> apply_scheme_coupling(double f0, double f1,
                                                Scheme scheme, double eta) {
  if (scheme == Scheme::LimitedSingle) {
    const double d = eta * (f0 - f1);
    return {d, -d};
  }
  return {eta * f0, eta * f1};
}

OptimizationResult tbqcp_iterate(const ProtocolSpec& spec,
                                 const TbqcpConfig& config,
                                 const TimeGrid& grid) {
  if (config.eta <= 0.0 || config.max_iters < 1)
    throw std::invalid_argument("tbqcp_iterate: invalid config");

  const int n = grid.n_steps;
  const double dt = grid.dt();
  const bool bounded = config.scheme != Scheme::Unlimited2;

  ControlField controls = lae_controls(grid);
  controls.bounded = bounded;

  FrozenMask frozen0(n, -1), frozen1(n, -1);

  // Step unitaries of the current controls; refreshed during each forward
  // sweep so the next backward pass reuses them instead of re-exponentiating.
  std::vector<ComplexMatrix> us = step_unitaries(spec, controls);
  std::vector<ComplexMatrix> obs(n + 1);

  OptimizationResult result;
  result.fidelity_trace.reserve(config.max_iters + 1);

  // Initial (LAE) fidelity.
  {
    ComplexVector psi = spec.psi0;
    for (const auto& u : us) psi = u * psi;
    result.fidelity_trace.push_back(fidelity(psi, spec.target));
    result.final_state = psi;
  }
  result.snapshots.push_back({0, controls.eps0, controls.eps1});

  result.last_f0 = RealVector::Zero(n);
  result.last_f1 = RealVector::Zero(n);

  int flat_count = 0;
  int iter = 0;
  for (; iter < config.max_iters; ++iter) {
    // Backward Heisenberg evolution of O under the current controls.
    obs[n] = spec.observable;
    for (int i = n - 1; i >= 0; --i)
      obs[i] = us[i].adjoint() * obs[i + 1] * us[i];

    // Forward sweep with in-place self-consistent control update. The
    // correction is averaged over the step endpoints (the right endpoint
    // predicted with the previous controls); a left-endpoint-only sample
    // would vanish identically at t = 0, where psi0 is an H0 eigenstate,
    // leaving the first control sample stuck at its trial value.
    ComplexVector psi = spec.psi0;
    for (int i = 0; i < n; ++i) {
      const ComplexVector opsi = obs[i] * psi;
      const ComplexVector psi_next = us[i] * psi;
      const ComplexVector opsi_next = obs[i + 1] * psi_next;
      const double f0 =
          std::imag(opsi.dot(spec.h0 * psi)) +
          std::imag(opsi_next.dot(spec.h0 * psi_next));
      const double f1 =
          std::imag(opsi.dot(spec.h1 * psi)) +
          std::imag(opsi_next.dot(spec.h1 * psi_next));
      result.last_f0(i) = f0;
      result.last_f1(i) = f1;
      const auto [d0, d1] =
          apply_scheme_coupling(f0, f1, config.scheme, config.eta);
      double e0 = controls.eps0(i) + d0;
      double e1 = controls.eps1(i) + d1;
      if (config.scheme == Scheme::LimitedSingle) {
        e0 = clamp_control(e0, config.clamp_mode, frozen0[i]);
        e1 = 1.0 - e0;
      } else if (bounded) {
        e0 = clamp_control(e0, config.clamp_mode, frozen0[i]);
        e1 = clamp_control(e1, config.clamp_mode, frozen1[i]);
      }
      controls.eps0(i) = e0;
      controls.eps1(i) = e1;
      us[i] = expm_unitary(total_hamiltonian(spec, e0, e1), dt);
      psi = us[i] * psi;
    }

    const double f = fidelity(psi, spec.target);
    const double prev = result.fidelity_trace.back();
    if (f < prev - 1e-10) {
      std::ostringstream msg;
      msg << "tbqcp_iterate: fidelity decreased from " << prev << " to " << f
          << " at iteration " << iter + 1 << " (step size fault?)";
      throw std::runtime_error(msg.str());
    }
    result.fidelity_trace.push_back(f);
    result.final_state = psi;

    if ((iter + 1) % config.snapshot_stride == 0)
      result.snapshots.push_back({iter + 1, controls.eps0, controls.eps1});

    flat_count = std::abs(f - prev) < config.convergence_tol ? flat_count + 1 : 0;
    if (flat_count >= 10) {
      ++iter;
      result.converged = true;
      break;
    }
  }
  result.iterations_run = iter;
  if (result.snapshots.back().iteration != result.iterations_run)
    result.snapshots.push_back(
        {result.iterations_run, controls.eps0, controls.eps1});
  result.controls = controls;

  const StateTrajectory psi_traj = evolve_forward(spec, controls);
  const StateTrajectory lam_traj =
      costate_backward(spec, controls, psi_traj.states.back());
  result.diagnostics = switching_functions(spec, controls, psi_traj, lam_traj);
  return result;
}

}  // namespace qoct
