#include "qoct/runner.hpp"

#include <atomic>
#include <cstdio>
#include <functional>
#include <thread>

#include "qoct/io.hpp"
#include "qoct/pmp.hpp"

namespace qoct {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

// Runs the tasks on a bounded pool; task order in the vector fixes the
// result order, so output files do not depend on scheduling.
void run_pool(std::vector<std::function<void()>>& tasks, int workers) {
  if (workers <= 0)
    workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min<int>(workers, static_cast<int>(tasks.size()));
  if (workers <= 1) {
    for (auto& t : tasks) t();
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    threads.emplace_back([&] {
      for (;;) {
        const std::size_t i = next.fetch_add(1);
        if (i >= tasks.size()) return;
        tasks[i]();
      }
    });
  }
  for (auto& t : threads) t.join();
}

fs::path prepare_out_dir(const ExperimentConfig& cfg) {
  fs::path dir(cfg.out_dir);
  fs::create_directories(dir);
  return dir;
}

json manifest_base(const ExperimentConfig& cfg) {
  json config = config_to_json(cfg);
  json m;
  m["config"] = config;
  m["config_hash"] = fnv1a_hex(config.dump());
  return m;
}

void write_manifest(const fs::path& dir, const json& manifest) {
  write_text_file(dir / "manifest.json", manifest.dump(2) + "\n");
}

void write_controls_csv(const fs::path& path, const ControlField& controls) {
  CsvWriter csv(path, {"t", "eps0", "eps1"});
  for (int i = 0; i < controls.n_steps(); ++i)
    csv.row({controls.grid.midpoint(i), controls.eps0(i), controls.eps1(i)});
  csv.close();
}

void write_trace_csv(const fs::path& path, const std::vector<double>& trace) {
  CsvWriter csv(path, {"iter", "F"});
  for (std::size_t i = 0; i < trace.size(); ++i)
    csv.row({static_cast<double>(i), trace[i]});
  csv.close();
}

void write_diagnostics_csv(const fs::path& path, const PmpDiagnostics& diag) {
  CsvWriter csv(path, {"t", "phi0", "phi1", "cham", "xi"});
  for (int i = 0; i < diag.phi0.size(); ++i)
    csv.row({diag.grid.node(i), diag.phi0(i), diag.phi1(i), diag.cham(i),
             diag.xi(i)});
  csv.close();
}

void write_trajectory_csv(const fs::path& path, const StateTrajectory& traj) {
  std::vector<std::string> header = {"t"};
  const Eigen::Index dim = traj.states.front().size();
  for (Eigen::Index k = 0; k < dim; ++k) {
    header.push_back("re" + std::to_string(k));
    header.push_back("im" + std::to_string(k));
  }
  CsvWriter csv(path, header);
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    std::vector<double> row = {traj.grid.node(static_cast<int>(i))};
    for (Eigen::Index k = 0; k < dim; ++k) {
      row.push_back(traj.states[i](k).real());
      row.push_back(traj.states[i](k).imag());
    }
    csv.row(row);
  }
  csv.close();
}

Scheme tbqcp_scheme(EvolutionScheme scheme) {
  switch (scheme) {
    case EvolutionScheme::Unlimited2: return Scheme::Unlimited2;
    case EvolutionScheme::Limited2: return Scheme::Limited2;
    case EvolutionScheme::LimitedSingle: return Scheme::LimitedSingle;
    default: throw std::logic_error("not a TBQCP scheme");
  }
}

json cubic_fit_json(const CubicFit& fit) {
  if (!fit.fitted) return {{"fitted", false}};
  return {{"fitted", true},
          {"t_start", fit.t_start},
          {"t_end", fit.t_end},
          {"coeffs", {fit.coeffs(0), fit.coeffs(1), fit.coeffs(2), fit.coeffs(3)}},
          {"r_squared", fit.r_squared}};
}

}  // namespace

SchemeRun run_scheme(const ProtocolSpec& spec, const ExperimentConfig& cfg,
                     EvolutionScheme scheme, double t_final) {
  SchemeRun run;
  run.scheme = scheme;
  run.t_final = t_final;
  const TimeGrid grid = default_grid(t_final, cfg.steps_per_tau);

  switch (scheme) {
    case EvolutionScheme::Unlimited2:
    case EvolutionScheme::Limited2:
    case EvolutionScheme::LimitedSingle: {
      TbqcpConfig tb = cfg.tbqcp;
      tb.scheme = tbqcp_scheme(scheme);
      OptimizationResult result = tbqcp_iterate(spec, tb, grid);
      run.fidelity = result.final_fidelity();
      run.controls = result.controls;
      run.iterations = result.iterations_run;
      run.converged = result.converged;
      run.trace = result.fidelity_trace;
      run.snapshots = std::move(result.snapshots);
      break;
    }
    case EvolutionScheme::Qaoa: {
      PsoResult best;
      best.fidelity = -1.0;
      for (int p : cfg.qaoa_p) {
        PsoConfig pso = cfg.pso;
        pso.rng_seed = cfg.seed + static_cast<std::uint64_t>(p) * 7919;
        const PsoResult r = pso_optimize(spec, t_final, p, pso);
        run.qaoa_per_p.emplace_back(p, r.fidelity);
        if (r.fidelity > best.fidelity) {
          best = r;
          run.qaoa_best_p = p;
        }
      }
      run.fidelity = best.fidelity;
      run.qaoa_params = best.params;
      run.controls = qaoa_to_controls(best.params, grid);
      run.converged = true;
      break;
    }
    case EvolutionScheme::Lae: {
      run.controls = lae_controls(grid);
      const StateTrajectory traj = evolve_forward(spec, run.controls);
      run.fidelity = fidelity(traj.states.back(), spec.target);
      break;
    }
  }
  run.cost = energy_cost(spec, run.controls);
  return run;
}

int cmd_optimize(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const ProtocolSpec spec = build_teleportation(cfg.input);
  const SchemeRun run = run_scheme(spec, cfg, cfg.scheme, cfg.t_final);

  write_controls_csv(dir / "controls.csv", run.controls);
  if (!run.trace.empty()) {
    write_trace_csv(dir / "fidelity_trace.csv", run.trace);
    for (const auto& snap : run.snapshots) {
      char name[48];
      std::snprintf(name, sizeof(name), "controls_iter_%06d.csv", snap.iteration);
      ControlField c = run.controls;
      c.eps0 = snap.eps0;
      c.eps1 = snap.eps1;
      write_controls_csv(dir / name, c);
    }
  }

  const StateTrajectory psi_traj = evolve_forward(spec, run.controls);
  const StateTrajectory lam_traj =
      costate_backward(spec, run.controls, psi_traj.states.back());
  write_diagnostics_csv(dir / "diagnostics.csv",
                        switching_functions(spec, run.controls, psi_traj,
                                            lam_traj));

  const CubicFitReport fits = cubic_fit_report(run.controls);
  json manifest = manifest_base(cfg);
  manifest["scheme"] = scheme_name(cfg.scheme);
  manifest["t_final"] = cfg.t_final;
  manifest["final_fidelity"] = run.fidelity;
  manifest["energy_cost"] = run.cost;
  manifest["iterations_run"] = run.iterations;
  manifest["converged"] = run.converged;
  manifest["cubic_fit"] = {{"eps0", cubic_fit_json(fits.eps0)},
                           {"eps1", cubic_fit_json(fits.eps1)}};
  if (run.scheme == EvolutionScheme::Qaoa) {
    manifest["qaoa"] = {{"best_p", run.qaoa_best_p},
                        {"gammas", std::vector<double>(
                                       run.qaoa_params.gammas.begin(),
                                       run.qaoa_params.gammas.end())},
                        {"betas", std::vector<double>(
                                      run.qaoa_params.betas.begin(),
                                      run.qaoa_params.betas.end())}};
  }
  write_manifest(dir, manifest);
  return run.converged ? 0 : 2;
}

int cmd_sweep(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const ProtocolSpec spec = build_teleportation(cfg.input);
  const std::vector<double> ts = cfg.sweep_grid();
  const double tc = find_critical_time(spec);

  constexpr std::array<EvolutionScheme, 5> schemes = {
      EvolutionScheme::Unlimited2, EvolutionScheme::Limited2,
      EvolutionScheme::LimitedSingle, EvolutionScheme::Qaoa,
      EvolutionScheme::Lae};

  std::vector<std::array<SchemeRun, 5>> runs(ts.size());
  std::vector<double> bang_sim(ts.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    for (std::size_t s = 0; s < schemes.size(); ++s) {
      tasks.emplace_back([&, i, s] {
        runs[i][s] = run_scheme(spec, cfg, schemes[s], ts[i]);
      });
    }
    tasks.emplace_back([&, i] {
      const TimeGrid grid = default_grid(ts[i], cfg.steps_per_tau);
      const StateTrajectory traj =
          evolve_forward(spec, constant_controls(grid, 1.0, 1.0, true));
      bang_sim[i] = fidelity(traj.states.back(), spec.target);
    });
  }
  run_pool(tasks, cfg.workers);

  {
    CsvWriter csv(dir / "sweep.csv",
                  {"T", "F_scheme1", "F_scheme2", "F_scheme3", "F_scheme4",
                   "F_scheme5", "F_doublebang_sim", "F_doublebang_formula"});
    for (std::size_t i = 0; i < ts.size(); ++i) {
      csv.row({ts[i], runs[i][0].fidelity, runs[i][1].fidelity,
               runs[i][2].fidelity, runs[i][3].fidelity, runs[i][4].fidelity,
               bang_sim[i], double_bang_curve(ts[i], tc)});
    }
    csv.close();
  }
  {
    CsvWriter csv(dir / "cost.csv", {"T", "Sigma_scheme1", "Sigma_scheme2",
                                     "Sigma_scheme3", "Sigma_scheme4",
                                     "Sigma_scheme5"});
    for (std::size_t i = 0; i < ts.size(); ++i)
      csv.row({ts[i], runs[i][0].cost, runs[i][1].cost, runs[i][2].cost,
               runs[i][3].cost, runs[i][4].cost});
    csv.close();
  }
  {
    CsvWriter csv(dir / "qaoa_per_p.csv", {"T", "p", "F"});
    for (std::size_t i = 0; i < ts.size(); ++i)
      for (const auto& [p, f] : runs[i][3].qaoa_per_p)
        csv.row({ts[i], static_cast<double>(p), f});
    csv.close();
  }

  json manifest = manifest_base(cfg);
  manifest["critical_time"] = tc;
  manifest["n_sweep_points"] = ts.size();
  write_manifest(dir, manifest);
  return 0;
}

int cmd_robustness(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const ProtocolSpec spec = build_teleportation(cfg.input);

  json summary = json::object();
  std::vector<SchemeRun> runs(cfg.robustness_schemes.size());
  std::vector<std::function<void()>> tasks;
  for (std::size_t s = 0; s < cfg.robustness_schemes.size(); ++s)
    tasks.emplace_back([&, s] {
      runs[s] = run_scheme(spec, cfg, cfg.robustness_schemes[s],
                           cfg.robustness_t);
    });
  run_pool(tasks, cfg.workers);

  for (std::size_t s = 0; s < cfg.robustness_schemes.size(); ++s) {
    const EvolutionScheme scheme = cfg.robustness_schemes[s];
    const RobustnessReport report =
        robustness_scan(spec, runs[s].controls, cfg.robustness_alphas);

    std::vector<std::string> header = {"alpha"};
    for (const char* label : RobustnessReport::column_labels())
      header.push_back(label);
    header.push_back("worst");
    CsvWriter csv(dir / ("robustness_" + scheme_name(scheme) + ".csv"), header);
    for (const auto& row : report.rows) {
      std::vector<double> vals = {row.alpha};
      vals.insert(vals.end(), row.fidelities.begin(), row.fidelities.end());
      vals.push_back(row.worst);
      csv.row(vals);
    }
    csv.close();

    summary[scheme_name(scheme)] = {
        {"error_free_fidelity", runs[s].fidelity},
        {"worst_at_max_alpha", report.rows.back().worst}};
  }

  json manifest = manifest_base(cfg);
  manifest["t_final"] = cfg.robustness_t;
  manifest["schemes"] = summary;
  write_manifest(dir, manifest);
  return 0;
}

int cmd_qaoa(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const ProtocolSpec spec = build_teleportation(cfg.input);
  const TimeGrid grid = default_grid(cfg.t_final, cfg.steps_per_tau);

  json per_p = json::array();
  for (int p : cfg.qaoa_p) {
    PsoConfig pso = cfg.pso;
    pso.rng_seed = cfg.seed + static_cast<std::uint64_t>(p) * 7919;
    const PsoResult r = pso_optimize(spec, cfg.t_final, p, pso);
    per_p.push_back({{"p", p},
                     {"F", r.fidelity},
                     {"seed", pso.rng_seed},
                     {"swarm_collapsed", r.swarm_collapsed},
                     {"gammas", std::vector<double>(r.params.gammas.begin(),
                                                    r.params.gammas.end())},
                     {"betas", std::vector<double>(r.params.betas.begin(),
                                                   r.params.betas.end())}});
    char name[32];
    std::snprintf(name, sizeof(name), "controls_p%d.csv", p);
    write_controls_csv(dir / name, qaoa_to_controls(r.params, grid));
  }

  json manifest = manifest_base(cfg);
  manifest["t_final"] = cfg.t_final;
  manifest["results"] = per_p;
  write_manifest(dir, manifest);
  return 0;
}

int cmd_diagnose(const ExperimentConfig& cfg) {
  const fs::path dir = prepare_out_dir(cfg);
  const ProtocolSpec spec = build_teleportation(cfg.input);
  const SchemeRun run = run_scheme(spec, cfg, cfg.scheme, cfg.t_final);

  const StateTrajectory psi_traj = evolve_forward(spec, run.controls);
  const StateTrajectory lam_traj =
      costate_backward(spec, run.controls, psi_traj.states.back());
  const PmpDiagnostics diag =
      switching_functions(spec, run.controls, psi_traj, lam_traj);
  const PmpResiduals res = pmp_residuals(diag, run.controls);

  write_diagnostics_csv(dir / "diagnostics.csv", diag);
  write_trajectory_csv(dir / "trajectory.csv", psi_traj);
  write_controls_csv(dir / "controls.csv", run.controls);

  json manifest = manifest_base(cfg);
  manifest["scheme"] = scheme_name(cfg.scheme);
  manifest["t_final"] = cfg.t_final;
  manifest["final_fidelity"] = run.fidelity;
  // The measured constant of motion; equals the free-time penalty weight
  // alpha(T) at a converged optimum.
  manifest["residuals"] = {{"cham_mean", res.cham_mean},
                           {"cham_stddev", res.cham_stddev},
                           {"phi0_at_start", res.phi0_at_start},
                           {"phi1_at_end", res.phi1_at_end},
                           {"bound_violations", res.bound_violations},
                           {"tol", res.tol}};
  write_manifest(dir, manifest);
  return run.converged ? 0 : 2;
}

}  // namespace qoct
