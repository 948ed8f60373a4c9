#include "qoct/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace qoct {

const std::array<const char*, 9>& RobustnessReport::column_labels() {
  static const std::array<const char*, 9> labels = {
      "F_x1", "F_x2", "F_x3", "F_y1", "F_y2", "F_y3", "F_z1", "F_z2", "F_z3"};
  return labels;
}

double energy_cost(const ProtocolSpec& spec, const ControlField& controls) {
  // ||e0 H0 + e1 H1||_F^2 = e0^2 Tr(H0^2) + e1^2 Tr(H1^2) + 2 e0 e1 Tr(H0 H1)
  const double tr00 = std::real((spec.h0 * spec.h0).trace());
  const double tr11 = std::real((spec.h1 * spec.h1).trace());
  const double tr01 = std::real((spec.h0 * spec.h1).trace());

  double sum = 0.0;
  for (int i = 0; i < controls.n_steps(); ++i) {
    const double e0 = controls.eps0(i);
    const double e1 = controls.eps1(i);
    sum += std::sqrt(
        std::max(0.0, e0 * e0 * tr00 + e1 * e1 * tr11 + 2.0 * e0 * e1 * tr01));
  }
  return sum * controls.grid.dt() / controls.grid.t_final;
}

double double_bang_curve(double t_final, double t_critical) {
  if (t_critical <= 0.0)
    throw std::invalid_argument("double_bang_curve: Tc must be positive");
  const double s = std::sin(M_PI * t_final / (2.0 * t_critical));
  return 0.25 + 0.75 * s * s;
}

double double_bang_fidelity(const ProtocolSpec& spec, double t_final) {
  static thread_local ComplexMatrix cached_h;
  static thread_local EigenDecomposition cached_eig;
  const ComplexMatrix h = spec.h0 + spec.h1;
  if (cached_h.size() == 0 || cached_h.rows() != h.rows() || cached_h != h) {
    cached_eig = eig_hermitian(h);
    cached_h = h;
  }
  const ComplexVector psi_t =
      expm_unitary(cached_eig, t_final) * spec.psi0;
  return fidelity(psi_t, spec.target);
}

double find_critical_time(const ProtocolSpec& spec, double resolution) {
  if (resolution <= 0.0 || resolution > 0.01)
    throw std::invalid_argument("find_critical_time: resolution must be in (0, 0.01]");
  const double threshold = 1.0 - 1e-4;

  if (fidelity(spec.psi0, spec.target) >= threshold) return 0.0;

  const double t_max = 10.0;
  double lo = 0.0, hi = 0.0;
  bool bracketed = false;
  for (double t = resolution; t <= t_max; t += resolution) {
    if (double_bang_fidelity(spec, t) >= threshold) {
      hi = t;
      lo = t - resolution;
      bracketed = true;
      break;
    }
  }
  if (!bracketed)
    throw std::runtime_error("find_critical_time: no bracket below 10 tau0");

  while (hi - lo > resolution / 100.0) {
    const double mid = 0.5 * (lo + hi);
    if (double_bang_fidelity(spec, mid) >= threshold)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

RobustnessReport robustness_scan(const ProtocolSpec& spec,
                                 const ControlField& controls,
                                 const std::vector<double>& alphas) {
  RobustnessReport report;
  report.t_final = controls.grid.t_final;
  report.rows.reserve(alphas.size());

  constexpr std::array<PauliAxis, 3> axes = {PauliAxis::X, PauliAxis::Y,
                                             PauliAxis::Z};
  for (double alpha : alphas) {
    RobustnessRow row;
    row.alpha = alpha;
    int col = 0;
    for (PauliAxis axis : axes) {
      for (int qubit = 1; qubit <= 3; ++qubit) {
        const ComplexMatrix he = build_error_hamiltonian(axis, qubit, alpha);
        const StateTrajectory traj = evolve_forward(spec, controls, &he);
        row.fidelities[col++] = fidelity(traj.states.back(), spec.target);
      }
    }
    row.worst = *std::min_element(row.fidelities.begin(), row.fidelities.end());
    report.rows.push_back(row);
  }
  return report;
}

namespace {

CubicFit fit_control(const RealVector& eps, const TimeGrid& grid,
                     bool bounded) {
  // Longest run of samples strictly inside (0,1); the whole horizon when the
  // schedule was never clamped.
  int best_start = 0, best_len = 0;
  if (!bounded) {
    best_len = static_cast<int>(eps.size());
  } else {
    int run_start = 0, run_len = 0;
    for (int i = 0; i < eps.size(); ++i) {
      if (eps(i) > 0.0 && eps(i) < 1.0) {
        if (run_len == 0) run_start = i;
        ++run_len;
        if (run_len > best_len) {
          best_len = run_len;
          best_start = run_start;
        }
      } else {
        run_len = 0;
      }
    }
  }

  CubicFit fit;
  if (best_len < 5) return fit;

  // Vandermonde least squares on times centered and scaled to [-1,1] for
  // conditioning; coefficients mapped back to plain powers of t afterwards.
  const double t0 = grid.midpoint(best_start);
  const double t1 = grid.midpoint(best_start + best_len - 1);
  const double mid = 0.5 * (t0 + t1);
  const double half = 0.5 * (t1 - t0);

  Eigen::MatrixXd a(best_len, 4);
  Eigen::VectorXd y(best_len);
  for (int i = 0; i < best_len; ++i) {
    const double u = (grid.midpoint(best_start + i) - mid) / half;
    a(i, 0) = 1.0;
    a(i, 1) = u;
    a(i, 2) = u * u;
    a(i, 3) = u * u * u;
    y(i) = eps(best_start + i);
  }
  const Eigen::Vector4d c = a.colPivHouseholderQr().solve(y);

  const Eigen::VectorXd resid = y - a * c;
  const double ss_res = resid.squaredNorm();
  const double ss_tot = (y.array() - y.mean()).square().sum();

  // Expand c0 + c1 u + c2 u^2 + c3 u^3 with u = (t - mid)/half.
  const double b1 = 1.0 / half, b0 = -mid / half;
  Eigen::Vector4d out = Eigen::Vector4d::Zero();
  Eigen::Vector4d upow = Eigen::Vector4d::Zero();  // (b0 + b1 t)^k coefficients
  for (int k = 0; k < 4; ++k) {
    upow.setZero();
    // binomial expansion of (b0 + b1 t)^k
    double binom = 1.0;
    for (int j = 0; j <= k; ++j) {
      upow(j) = binom * std::pow(b0, k - j) * std::pow(b1, j);
      binom = binom * (k - j) / (j + 1.0);
    }
    out += c(k) * upow;
  }

  fit.fitted = true;
  fit.t_start = t0;
  fit.t_end = t1;
  fit.coeffs = out;
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  return fit;
}

}  // namespace

CubicFitReport cubic_fit_report(const ControlField& controls) {
  CubicFitReport report;
  report.eps0 = fit_control(controls.eps0, controls.grid, controls.bounded);
  report.eps1 = fit_control(controls.eps1, controls.grid, controls.bounded);
  return report;
}

}  // namespace qoct
