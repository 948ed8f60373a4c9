#ifndef QOCT_PROPAGATE_HPP
#define QOCT_PROPAGATE_HPP

#include <vector>

#include "qoct/model.hpp"

namespace qoct {

struct TimeGrid {
  double t_final = 1.0;   // in tau0
  int n_steps = 2000;

  double dt() const { return t_final / n_steps; }
  double midpoint(int step) const { return (step + 0.5) * dt(); }
  double node(int i) const { return i * dt(); }
};

/// Default resolution: 2000 steps per tau0 of horizon (at least 2).
TimeGrid default_grid(double t_final, int steps_per_tau = 2000);

// Piecewise-constant control schedules sampled at step midpoints.
struct ControlField {
  TimeGrid grid;
  RealVector eps0;
  RealVector eps1;
  bool bounded = false;

  int n_steps() const { return grid.n_steps; }
};

/// Linear adiabatic ramp eps0 = 1 - t/T, eps1 = t/T.
ControlField lae_controls(const TimeGrid& grid);

/// Constant schedules.
ControlField constant_controls(const TimeGrid& grid, double eps0, double eps1,
                               bool bounded = false);

struct StateTrajectory {
  TimeGrid grid;
  std::vector<ComplexVector> states;  // n_steps + 1 entries, node times
};

struct ObservableTrajectory {
  TimeGrid grid;
  std::vector<ComplexMatrix> observables;  // n_steps + 1 entries, node times
};

/// Exact step unitaries U_i = exp(-i H_i dt), H_i from the midpoint control
/// samples. Shared by forward and backward evolution so the discrete
/// pairing <lambda(t)|psi(t)> is conserved exactly.
std::vector<ComplexMatrix> step_unitaries(const ProtocolSpec& spec,
                                          const ControlField& controls,
                                          const ComplexMatrix* err = nullptr);

/// Schroedinger evolution of psi0 under the sampled controls.
StateTrajectory evolve_forward(const ProtocolSpec& spec,
                               const ControlField& controls,
                               const ComplexMatrix* err = nullptr);

/// Heisenberg evolution of the observable from t = T back to t = 0,
/// conjugating with the adjoints of the forward step unitaries.
ObservableTrajectory evolve_observable_backward(const ProtocolSpec& spec,
                                                const ComplexMatrix& o_final,
                                                const ControlField& controls,
                                                const ComplexMatrix* err = nullptr);

/// |<target|state>|^2.
double fidelity(const ComplexVector& state, const ComplexVector& target);

}  // namespace qoct

#endif
