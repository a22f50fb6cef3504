#include <cstdio>
#include <iostream>

#include "commands.hpp"
#include "lomac/advection.hpp"
#include "lomac/config.hpp"

using namespace lomac;

int cmd_advect(const std::string& config_path, const std::vector<std::string>& overrides,
               bool postprocess) {
  const SolverConfig cfg =
      parse_config_file(config_path, overrides, RunMode::advect2d, &std::cerr);
  const AdvectionSolver solver(make_advection_options(cfg));
  const AdvectionResult res = solver.run(cfg.t_end, postprocess);

  int rank_min = res.rank_history.front(), rank_max = rank_min;
  for (int r : res.rank_history) {
    rank_min = std::min(rank_min, r);
    rank_max = std::max(rank_max, r);
  }

  std::printf("grid               %dx%d cells, degree %d\n", cfg.nx, cfg.nv, cfg.degree);
  std::printf("steps              %d (dt = %.6g)\n", res.steps, res.dt);
  std::printf("rank range         [%d, %d]\n", rank_min, rank_max);
  std::printf("L2 error           %.6e\n", res.l2_error);
  std::printf("Linf error         %.6e\n", res.linf_error);
  if (res.postprocessed) {
    std::printf("L2 error (post)    %.6e\n", res.l2_post);
    std::printf("Linf error (post)  %.6e\n", res.linf_post);
  }
  std::printf("wall seconds       %.3f\n", res.cpu_seconds);
  return 0;
}
