#include "qoct/propagate.hpp"

#include <cmath>

namespace qoct {

TimeGrid default_grid(double t_final, int steps_per_tau) {
  if (t_final <= 0.0)
    throw std::invalid_argument("default_grid: t_final must be positive");
  int n = static_cast<int>(std::ceil(t_final * steps_per_tau));
  return {t_final, std::max(n, 2)};
}

ControlField lae_controls(const TimeGrid& grid) {
  ControlField c;
  c.grid = grid;
  c.eps0.resize(grid.n_steps);
  c.eps1.resize(grid.n_steps);
  for (int i = 0; i < grid.n_steps; ++i) {
    const double s = grid.midpoint(i) / grid.t_final;
    c.eps0(i) = 1.0 - s;
    c.eps1(i) = s;
  }
  c.bounded = true;
  return c;
}

ControlField constant_controls(const TimeGrid& grid, double eps0, double eps1,
                               bool bounded) {
  ControlField c;
  c.grid = grid;
  c.eps0 = RealVector::Constant(grid.n_steps, eps0);
  c.eps1 = RealVector::Constant(grid.n_steps, eps1);
  c.bounded = bounded;
  return c;
}

std::vector<ComplexMatrix> step_unitaries(const ProtocolSpec& spec,
                                          const ControlField& controls,
                                          const ComplexMatrix* err) {
  const int n = controls.n_steps();
  const double dt = controls.grid.dt();
  std::vector<ComplexMatrix> us;
  us.reserve(n);
  for (int i = 0; i < n; ++i) {
    const ComplexMatrix h =
        total_hamiltonian(spec, controls.eps0(i), controls.eps1(i), err);
    us.push_back(expm_unitary(h, dt));
  }
  return us;
}

StateTrajectory evolve_forward(const ProtocolSpec& spec,
                               const ControlField& controls,
                               const ComplexMatrix* err) {
  if (spec.psi0.size() != spec.dim())
    throw std::invalid_argument("evolve_forward: dimension mismatch");
  StateTrajectory traj;
  traj.grid = controls.grid;
  traj.states.reserve(controls.n_steps() + 1);
  traj.states.push_back(spec.psi0);
  const auto us = step_unitaries(spec, controls, err);
  for (const auto& u : us) traj.states.push_back(u * traj.states.back());
  return traj;
}

ObservableTrajectory evolve_observable_backward(const ProtocolSpec& spec,
                                                const ComplexMatrix& o_final,
                                                const ControlField& controls,
                                                const ComplexMatrix* err) {
  if (o_final.rows() != spec.dim() || o_final.cols() != spec.dim())
    throw std::invalid_argument("evolve_observable_backward: dimension mismatch");
  const int n = controls.n_steps();
  ObservableTrajectory traj;
  traj.grid = controls.grid;
  traj.observables.assign(n + 1, ComplexMatrix());
  traj.observables[n] = o_final;
  const auto us = step_unitaries(spec, controls, err);
  for (int i = n - 1; i >= 0; --i)
    traj.observables[i] = us[i].adjoint() * traj.observables[i + 1] * us[i];
  return traj;
}

double fidelity(const ComplexVector& state, const ComplexVector& target) {
  return std::norm(target.dot(state));
}

}  // namespace qoct
