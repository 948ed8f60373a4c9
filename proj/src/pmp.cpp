#include "qoct/pmp.hpp"

#include <cmath>

namespace qoct {

StateTrajectory costate_backward(const ProtocolSpec& spec,
                                 const ControlField& controls,
                                 const ComplexVector& psi_final) {
  if (psi_final.size() != spec.dim())
    throw std::invalid_argument("costate_backward: dimension mismatch");
  const int n = controls.n_steps();
  StateTrajectory traj;
  traj.grid = controls.grid;
  traj.states.assign(n + 1, ComplexVector());
  traj.states[n] = spec.observable * psi_final;
  const auto us = step_unitaries(spec, controls);
  for (int i = n - 1; i >= 0; --i)
    traj.states[i] = us[i].adjoint() * traj.states[i + 1];
  return traj;
}

PmpDiagnostics switching_functions(const ProtocolSpec& spec,
                                   const ControlField& controls,
                                   const StateTrajectory& psi_traj,
                                   const StateTrajectory& lambda_traj) {
  const int n = controls.n_steps();
  if (static_cast<int>(psi_traj.states.size()) != n + 1 ||
      static_cast<int>(lambda_traj.states.size()) != n + 1)
    throw std::invalid_argument("switching_functions: mismatched grids");

  PmpDiagnostics diag;
  diag.grid = controls.grid;
  diag.phi0.resize(n + 1);
  diag.phi1.resize(n + 1);
  diag.cham.resize(n + 1);
  diag.xi.resize(n + 1);
  diag.lambda_traj = lambda_traj;

  const ComplexMatrix comm = spec.h1 * spec.h0 - spec.h0 * spec.h1;
  for (int i = 0; i <= n; ++i) {
    const ComplexVector& psi = psi_traj.states[i];
    const ComplexVector& lam = lambda_traj.states[i];
    diag.phi0(i) = 2.0 * std::imag(lam.dot(spec.h0 * psi));
    diag.phi1(i) = 2.0 * std::imag(lam.dot(spec.h1 * psi));
    diag.xi(i) = 2.0 * std::real(lam.dot(comm * psi));
    const int s = std::min(i, n - 1);
    diag.cham(i) =
        controls.eps0(s) * diag.phi0(i) + controls.eps1(s) * diag.phi1(i);
  }
  return diag;
}

PmpResiduals pmp_residuals(const PmpDiagnostics& diag,
                           const ControlField& controls, double tol) {
  PmpResiduals res;
  res.tol = tol;
  const int n = controls.n_steps();

  res.cham_mean = diag.cham.mean();
  res.cham_stddev =
      std::sqrt((diag.cham.array() - res.cham_mean).square().mean());
  res.phi0_at_start = diag.phi0(0);
  res.phi1_at_end = diag.phi1(n);

  auto check = [&](double phi, double eps) {
    if (phi > tol) return eps == 1.0;
    if (phi < -tol) return eps == 0.0;
    return true;  // |phi| <= tol: any admissible value
  };
  auto interior_ok = [&](double phi, double eps) {
    if (eps > 0.0 && eps < 1.0) return std::abs(phi) <= tol;
    return true;
  };
  for (int i = 0; i < n; ++i) {
    const bool ok = check(diag.phi0(i), controls.eps0(i)) &&
                    check(diag.phi1(i), controls.eps1(i)) &&
                    interior_ok(diag.phi0(i), controls.eps0(i)) &&
                    interior_ok(diag.phi1(i), controls.eps1(i));
    if (!ok) ++res.bound_violations;
  }
  return res;
}

}  // namespace qoct
