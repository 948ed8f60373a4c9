#ifndef QOCT_METRICS_HPP
#define QOCT_METRICS_HPP

#include <array>
#include <vector>

#include "qoct/propagate.hpp"

namespace qoct {

// One fidelity table row of the systematic-error scan: the 9 (axis, qubit)
// single-Pauli errors at a fixed alpha, plus their minimum.
struct RobustnessRow {
  double alpha = 0.0;
  std::array<double, 9> fidelities{};  // axis-major: x1 x2 x3 y1 y2 y3 z1 z2 z3
  double worst = 0.0;
};

struct RobustnessReport {
  double t_final = 0.0;
  std::vector<RobustnessRow> rows;

  static const std::array<const char*, 9>& column_labels();
};

struct CubicFit {
  bool fitted = false;      // false when no unclamped window of >= 5 samples
  double t_start = 0.0;
  double t_end = 0.0;
  Eigen::Vector4d coeffs = Eigen::Vector4d::Zero();  // c0 + c1 t + c2 t^2 + c3 t^3
  double r_squared = 0.0;
};

struct CubicFitReport {
  CubicFit eps0;
  CubicFit eps1;
};

/// Time-averaged Frobenius norm of eps0*H0 + eps1*H1 (midpoint quadrature;
/// any error Hamiltonian is excluded by definition).
double energy_cost(const ProtocolSpec& spec, const ControlField& controls);

/// Closed-form reference 0.25 + 0.75 sin^2(pi T / (2 Tc)) for the
/// both-controls-at-maximum evolution.
double double_bang_curve(double t_final, double t_critical);

/// Fidelity of the constant eps0 = eps1 = 1 evolution, computed exactly from
/// one exponential of H0 + H1.
double double_bang_fidelity(const ProtocolSpec& spec, double t_final);

/// Smallest T with double-bang fidelity >= 1 - 1e-4, located by scan plus
/// bisection down to resolution/100. Throws std::runtime_error when no
/// bracket exists below 10 tau0.
double find_critical_time(const ProtocolSpec& spec, double resolution = 0.01);

/// Re-propagates the given converged controls under H(t) + He for every
/// alpha and every single-Pauli error, recording the fidelity table.
RobustnessReport robustness_scan(const ProtocolSpec& spec,
                                 const ControlField& controls,
                                 const std::vector<double>& alphas);

/// Least-squares cubic over the longest window where the control is strictly
/// inside (0, 1); skipped when that window has fewer than 5 samples.
CubicFitReport cubic_fit_report(const ControlField& controls);

}  // namespace qoct

#endif
