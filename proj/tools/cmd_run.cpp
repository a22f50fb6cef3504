#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <thread>

#include "commands.hpp"
#include "lomac/config.hpp"
#include "lomac/io.hpp"
#include "lomac/vp_stepper.hpp"

using namespace lomac;

int worker_count(int jobs) {
  int n = 0;
  if (const char* env = std::getenv("LOMAC_THREADS")) n = std::atoi(env);
  if (n <= 0) n = static_cast<int>(std::thread::hardware_concurrency());
  if (n <= 0) n = 1;
  return std::min(n, std::max(jobs, 1));
}

int cmd_run(const std::string& config_path, const std::vector<std::string>& overrides) {
  const SolverConfig cfg =
      parse_config_file(config_path, overrides, RunMode::vp1d1v, &std::cerr);
  const VlasovProblem problem = make_problem(cfg);
  const VpSolver solver(problem, make_vp_options(cfg));

  std::vector<KineticState> snapshots;
  const RunResult res =
      solver.run(cfg.t_end, cfg.output_interval, &snapshots, cfg.snapshot_times);

  std::printf("problem            %s\n", problem.name.c_str());
  std::printf("grid               %dx%d cells, degree %d\n", cfg.nx, cfg.nv, cfg.degree);
  std::printf("steps              %d (dt = %.6g)\n", res.steps, res.dt);
  std::printf("final rank         %d\n", res.series.back().rank);
  std::printf("max |dmass|/mass   %.3e\n", res.max_mass_rel_dev);
  std::printf("max |dmomentum|    %.3e\n", res.max_momentum_abs_dev);
  std::printf("max |denergy|/e    %.3e\n", res.max_energy_rel_dev);
  std::printf("wall seconds       %.3f\n", res.cpu_seconds);

  if (!cfg.diagnostics_path.empty()) {
    write_diagnostics(cfg.diagnostics_path, res.series);
    std::printf("diagnostics        %s\n", cfg.diagnostics_path.c_str());
  }

  const std::string prefix =
      cfg.snapshot_prefix.empty() ? problem.name : cfg.snapshot_prefix;
  for (std::size_t i = 0; i < snapshots.size(); ++i) {
    char name[512];
    std::snprintf(name, sizeof name, "%s_%03zu.snap", prefix.c_str(), i);
    write_snapshot(name, snapshots[i].cur.f, solver.xgrid(), solver.vgrid(), "vp1d1v",
                   cfg.degree);
    std::printf("snapshot t=%-10.6g %s\n", snapshots[i].t, name);
  }
  return 0;
}
