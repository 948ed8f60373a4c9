#include <cmath>
#include <complex>

#include <doctest.h>

#include "qoct/model.hpp"
#include "qoct/propagate.hpp"
#include "qoct/rng.hpp"

using namespace qoct;

namespace {

ControlField random_bounded_controls(const TimeGrid& grid, std::uint64_t seed) {
  ControlField c = constant_controls(grid, 0.0, 0.0, true);
  Rng rng(seed);
  for (int i = 0; i < grid.n_steps; ++i) {
    c.eps0(i) = rng.uniform();
    c.eps1(i) = rng.uniform();
  }
  return c;
}

}  // namespace

TEST_CASE("default_grid resolution") {
  CHECK(default_grid(1.0).n_steps == 2000);
  CHECK(default_grid(1.5).n_steps == 3000);
  CHECK(default_grid(0.5, 1000).n_steps == 500);
  CHECK(default_grid(1e-4).n_steps >= 2);
  CHECK_THROWS_AS(default_grid(-1.0), std::invalid_argument);
}

TEST_CASE("lae_controls ramp") {
  const TimeGrid grid{2.0, 4};
  const ControlField c = lae_controls(grid);
  for (int i = 0; i < 4; ++i) {
    const double s = grid.midpoint(i) / grid.t_final;
    CHECK(c.eps0(i) == doctest::Approx(1.0 - s).epsilon(1e-14));
    CHECK(c.eps1(i) == doctest::Approx(s).epsilon(1e-14));
  }
  CHECK(c.bounded);
}

TEST_CASE("zero controls leave the state unchanged") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = constant_controls(default_grid(0.8, 100), 0.0, 0.0);
  const StateTrajectory traj = evolve_forward(spec, c);
  REQUIRE(traj.states.size() == 81);
  CHECK((traj.states.back() - spec.psi0).norm() <= 1e-12);
}

TEST_CASE("eigenstate evolution is a global phase") {
  const ProtocolSpec spec = build_teleportation({});
  const double t_final = 0.7;
  const ControlField c = constant_controls(default_grid(t_final, 500), 1.0, 0.0);
  const ComplexVector final_state = evolve_forward(spec, c).states.back();
  CHECK(fidelity(final_state, spec.psi0) == doctest::Approx(1.0).epsilon(1e-12));
  // H0 psi0 = -2 psi0, so the phase is exp(+2iT).
  const Complex phase = std::polar(1.0, 2.0 * t_final);
  CHECK((final_state - phase * spec.psi0).norm() <= 1e-10);
}

TEST_CASE("both controls at maximum reach the target near T = 1.11") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = constant_controls(default_grid(1.11), 1.0, 1.0, true);
  const double f =
      fidelity(evolve_forward(spec, c).states.back(), spec.target);
  CHECK(f >= 0.999);
}

TEST_CASE("fidelity examples") {
  const ProtocolSpec spec = build_teleportation({});
  CHECK(fidelity(spec.psi0, spec.psi0) == doctest::Approx(1.0).epsilon(1e-14));

  // |0>(x)|Phi> vs |Phi>(x)|0>: both have amplitude 1/sqrt(2) on |000>, the
  // other components (|011> vs |110>) are orthogonal, so the overlap is 1/2
  // and the fidelity 0.25.
  const double overlap_sq = std::norm(Complex(0.5, 0.0));
  CHECK(overlap_sq == doctest::Approx(0.25));
  CHECK(fidelity(spec.psi0, spec.target) ==
        doctest::Approx(0.25).epsilon(1e-12));

  ComplexVector w = ComplexVector::Zero(8);
  w(5) = Complex(1.0, 0.0);
  CHECK(fidelity(spec.psi0, w) == 0.0);
}

TEST_CASE("norm conservation under random bounded controls") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = random_bounded_controls(default_grid(1.3, 600), 5);
  const StateTrajectory traj = evolve_forward(spec, c);
  double worst = 0.0;
  for (const auto& s : traj.states)
    worst = std::max(worst, std::abs(s.norm() - 1.0));
  CHECK(worst <= 1e-10);
}

TEST_CASE("backward observable evolution") {
  const ProtocolSpec spec = build_teleportation({});
  const TimeGrid grid = default_grid(1.0, 400);

  SUBCASE("identity commutes with everything") {
    const ControlField c = random_bounded_controls(grid, 8);
    const ObservableTrajectory traj = evolve_observable_backward(
        spec, ComplexMatrix::Identity(8, 8), c);
    for (const auto& o : traj.observables)
      CHECK(frobenius_norm(o - ComplexMatrix::Identity(8, 8)) <= 1e-10);
  }

  SUBCASE("zero controls freeze the observable") {
    const ControlField c = constant_controls(grid, 0.0, 0.0);
    const ObservableTrajectory traj =
        evolve_observable_backward(spec, spec.observable, c);
    for (const auto& o : traj.observables)
      CHECK(frobenius_norm(o - spec.observable) <= 1e-12);
  }

  SUBCASE("projector spectrum is preserved") {
    const ControlField c = random_bounded_controls(grid, 9);
    const ObservableTrajectory traj =
        evolve_observable_backward(spec, spec.observable, c);
    for (const auto& o : traj.observables) {
      CHECK(std::abs(o.trace() - Complex(1.0, 0.0)) <= 1e-8);
      // Tr O^2 = 1 pins rank 1 for a positive unit-trace operator.
      CHECK(std::abs((o * o).trace() - Complex(1.0, 0.0)) <= 1e-8);
      CHECK(is_hermitian(o, 1e-10));
    }
  }
}

TEST_CASE("forward/backward consistency of the observable expectation") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = random_bounded_controls(default_grid(1.0, 500), 21);
  const StateTrajectory psi = evolve_forward(spec, c);
  const ObservableTrajectory obs =
      evolve_observable_backward(spec, spec.observable, c);
  const double expect_final =
      std::real(psi.states.back().dot(obs.observables.back() * psi.states.back()));
  for (std::size_t i = 0; i < psi.states.size(); ++i) {
    const double e =
        std::real(psi.states[i].dot(obs.observables[i] * psi.states[i]));
    CHECK(std::abs(e - expect_final) <= 1e-8);
  }
}

TEST_CASE("time reversal returns the initial state") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = random_bounded_controls(default_grid(0.9, 300), 33);
  const std::vector<ComplexMatrix> us = step_unitaries(spec, c);
  ComplexVector psi = spec.psi0;
  for (const auto& u : us) psi = u * psi;
  for (auto it = us.rbegin(); it != us.rend(); ++it) psi = it->adjoint() * psi;
  CHECK((psi - spec.psi0).norm() <= 1e-10);
}

TEST_CASE("grid convergence at the default resolution") {
  const ProtocolSpec spec = build_teleportation({});
  double f[2];
  for (int k = 0; k < 2; ++k) {
    const TimeGrid grid = default_grid(1.0, 2000 << k);
    const ControlField c = lae_controls(grid);
    f[k] = fidelity(evolve_forward(spec, c).states.back(), spec.target);
  }
  CHECK(std::abs(f[0] - f[1]) <= 1e-6);
}

TEST_CASE("error Hamiltonian shifts the evolution") {
  const ProtocolSpec spec = build_teleportation({});
  const ControlField c = lae_controls(default_grid(1.0, 300));
  const ComplexMatrix he = build_error_hamiltonian(PauliAxis::Y, 1, 0.1);
  const double f_clean =
      fidelity(evolve_forward(spec, c).states.back(), spec.target);
  const double f_err =
      fidelity(evolve_forward(spec, c, &he).states.back(), spec.target);
  CHECK(f_clean != doctest::Approx(f_err).epsilon(1e-10));
}
