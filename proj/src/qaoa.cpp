#include "qoct/qaoa.hpp"

#include <cmath>

#include "qoct/rng.hpp"

namespace qoct {

namespace {

ComplexVector apply_block(const EigenDecomposition& eig, double duration,
                          const ComplexVector& psi) {
  ComplexVector coeffs = eig.eigenvectors.adjoint() * psi;
  for (Eigen::Index k = 0; k < coeffs.size(); ++k)
    coeffs(k) *= std::exp(Complex(0.0, -eig.eigenvalues(k) * duration));
  return eig.eigenvectors * coeffs;
}

ComplexVector evolve_with_eigs(const EigenDecomposition& eig0,
                               const EigenDecomposition& eig1,
                               const ProtocolSpec& spec,
                               const QaoaParams& params) {
  ComplexVector psi = spec.psi0;
  for (int j = 0; j < params.p(); ++j) {
    psi = apply_block(eig1, params.gammas(j), psi);
    psi = apply_block(eig0, params.betas(j), psi);
  }
  return psi;
}

// Nonnegativity plus rescale onto sum = t_final. Zeros stay zero, so exact
// bang mergers survive the repair.
void repair(RealVector& x, double t_final, Rng& rng) {
  for (Eigen::Index k = 0; k < x.size(); ++k)
    if (x(k) < 0.0) x(k) = 0.0;
  double s = x.sum();
  if (s <= 0.0) {
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.uniform();
    s = x.sum();
  }
  x *= t_final / s;
}

QaoaParams unpack(const RealVector& x, int p) {
  QaoaParams params;
  params.gammas = x.head(p);
  params.betas = x.tail(p);
  return params;
}

}  // namespace

ComplexVector qaoa_evolve(const ProtocolSpec& spec, const QaoaParams& params) {
  if (params.gammas.size() != params.betas.size())
    throw std::invalid_argument("qaoa_evolve: gamma/beta size mismatch");
  if (params.gammas.minCoeff() < 0.0 || params.betas.minCoeff() < 0.0)
    throw std::invalid_argument("qaoa_evolve: negative duration");
  return evolve_with_eigs(eig_hermitian(spec.h0), eig_hermitian(spec.h1), spec,
                          params);
}

PsoResult pso_optimize(const ProtocolSpec& spec, double t_final, int p,
                       const PsoConfig& cfg) {
  if (t_final <= 0.0 || p < 1)
    throw std::invalid_argument("pso_optimize: invalid horizon or p");
  if (cfg.swarm_size < 2)
    throw std::invalid_argument("pso_optimize: swarm_size must be >= 2");

  const EigenDecomposition eig0 = eig_hermitian(spec.h0);
  const EigenDecomposition eig1 = eig_hermitian(spec.h1);
  const int dim = 2 * p;

  auto evaluate = [&](const RealVector& x) {
    const ComplexVector psi =
        evolve_with_eigs(eig0, eig1, spec, unpack(x, p));
    return fidelity(psi, spec.target);
  };

  PsoResult best;
  best.fidelity = -1.0;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(cfg.rng_seed + 0x9e3779b97f4a7c15ULL * restart);

    std::vector<RealVector> pos(cfg.swarm_size), vel(cfg.swarm_size),
        pbest(cfg.swarm_size);
    std::vector<double> pbest_f(cfg.swarm_size);
    RealVector gbest;
    double gbest_f = -1.0;

    for (int s = 0; s < cfg.swarm_size; ++s) {
      pos[s].resize(dim);
      for (int k = 0; k < dim; ++k) pos[s](k) = rng.uniform();
      repair(pos[s], t_final, rng);
      vel[s] = RealVector::Zero(dim);
      pbest[s] = pos[s];
      pbest_f[s] = evaluate(pos[s]);
      if (pbest_f[s] > gbest_f) {
        gbest_f = pbest_f[s];
        gbest = pos[s];
      }
    }

    bool collapsed = false;
    for (int it = 0; it < cfg.iterations && !collapsed; ++it) {
      for (int s = 0; s < cfg.swarm_size; ++s) {
        for (int k = 0; k < dim; ++k) {
          vel[s](k) = cfg.inertia * vel[s](k) +
                      cfg.cognitive * rng.uniform() * (pbest[s](k) - pos[s](k)) +
                      cfg.social * rng.uniform() * (gbest(k) - pos[s](k));
        }
        pos[s] += vel[s];
        repair(pos[s], t_final, rng);
        const double f = evaluate(pos[s]);
        if (f > pbest_f[s]) {
          pbest_f[s] = f;
          pbest[s] = pos[s];
        }
        if (f > gbest_f) {
          gbest_f = f;
          gbest = pos[s];
        }
      }
      double spread = 0.0;
      for (int s = 0; s < cfg.swarm_size; ++s)
        spread = std::max(spread, (pos[s] - gbest).cwiseAbs().maxCoeff());
      collapsed = spread < 1e-12;
    }

    if (gbest_f > best.fidelity) {
      best.fidelity = gbest_f;
      best.params = unpack(gbest, p);
      best.swarm_collapsed = collapsed;
    }
  }
  return best;
}

ControlField qaoa_to_controls(const QaoaParams& params, const TimeGrid& grid,
                              int* merged_blocks) {
  if (std::abs(params.total_time() - grid.t_final) >
      1e-9 * std::max(1.0, grid.t_final))
    throw std::invalid_argument("qaoa_to_controls: durations do not sum to t_final");

  const int p = params.p();
  const int n = grid.n_steps;
  const double dt = grid.dt();

  // Cumulative block edges snapped to grid nodes, kept monotone; the final
  // edge is pinned to T so the total duration is preserved.
  std::vector<int> edges(2 * p + 1, 0);
  double cum = 0.0;
  for (int j = 0; j < p; ++j) {
    cum += params.gammas(j);
    edges[2 * j + 1] = static_cast<int>(std::lround(cum / dt));
    cum += params.betas(j);
    edges[2 * j + 2] = static_cast<int>(std::lround(cum / dt));
  }
  edges[2 * p] = n;
  for (int k = 1; k <= 2 * p; ++k)
    edges[k] = std::min(std::max(edges[k], edges[k - 1]), n);

  int merged = 0;
  for (int k = 0; k < 2 * p; ++k)
    if (edges[k] == edges[k + 1]) ++merged;
  if (merged_blocks) *merged_blocks = merged;

  ControlField c = constant_controls(grid, 0.0, 0.0, true);
  for (int k = 0; k < 2 * p; ++k) {
    const bool h1_block = (k % 2 == 0);
    for (int i = edges[k]; i < edges[k + 1]; ++i) {
      c.eps0(i) = h1_block ? 0.0 : 1.0;
      c.eps1(i) = h1_block ? 1.0 : 0.0;
    }
  }
  return c;
}

}  // namespace qoct
