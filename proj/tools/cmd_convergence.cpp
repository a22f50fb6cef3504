#include <atomic>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <thread>

#include "commands.hpp"
#include "lomac/advection.hpp"
#include "lomac/config.hpp"
#include "lomac/io.hpp"
#include "lomac/vp_stepper.hpp"

using namespace lomac;

namespace {

struct LevelResult {
  std::string mesh;
  double l2 = 0.0, linf = 0.0, l2_post = 0.0, linf_post = 0.0;
  double cpu = 0.0;
  std::string error;
};

// Weighted L2 / nodal max error of the final kinetic solution against the
// benchmark's exact distribution.
void vp_errors(const SolverConfig& cfg, int factor, LevelResult& out) {
  SolverConfig level = cfg;
  level.nx = cfg.nx * factor;
  level.nv = cfg.nv * factor;
  const VlasovProblem problem = make_problem(level);
  if (!problem.exact_f)
    throw ConfigError("config: problem \"" + problem.name +
                      "\" has no exact solution for a convergence study");
  const VpSolver solver(problem, make_vp_options(level));
  std::vector<KineticState> snaps;
  const RunResult res = solver.run(level.t_end, 0.0, &snaps, {level.t_end});

  const Eigen::MatrixXd fh = to_dense(snaps.back().cur.f);
  const NodalGrid& xg = solver.xgrid();
  const NodalGrid& vg = solver.vgrid();
  double l2 = 0.0, linf = 0.0;
  for (int i = 0; i < xg.size(); ++i)
    for (int j = 0; j < vg.size(); ++j) {
      const double d = fh(i, j) - problem.exact_f(xg.points[i], vg.points[j], level.t_end);
      l2 += xg.weights[i] * vg.weights[j] * d * d;
      linf = std::max(linf, std::abs(d));
    }
  char mesh[64];
  std::snprintf(mesh, sizeof mesh, "%dx%d", level.nx, level.nv);
  out.mesh = mesh;
  out.l2 = std::sqrt(l2);
  out.linf = linf;
  out.cpu = res.cpu_seconds;
}

void advect_errors(const SolverConfig& cfg, int factor, LevelResult& out) {
  SolverConfig level = cfg;
  level.nx = cfg.nx * factor;
  level.nv = cfg.nv * factor;
  const AdvectionSolver solver(make_advection_options(level));
  const AdvectionResult res = solver.run(level.t_end, /*postprocess=*/true);
  char mesh[64];
  std::snprintf(mesh, sizeof mesh, "%dx%d", level.nx, level.nv);
  out.mesh = mesh;
  out.l2 = res.l2_error;
  out.linf = res.linf_error;
  out.l2_post = res.l2_post;
  out.linf_post = res.linf_post;
  out.cpu = res.cpu_seconds;
}

}  // namespace

int cmd_convergence(const std::string& config_path, const std::vector<std::string>& overrides,
                    int levels) {
  if (levels < 2) throw ConfigError("config: a convergence study needs --levels >= 2");
  const RunMode mode = config_mode(config_path, RunMode::vp1d1v);
  const SolverConfig cfg = parse_config_file(config_path, overrides, mode, &std::cerr);

  std::vector<LevelResult> results(levels);
  std::atomic<int> next{0};
  const int workers = worker_count(levels);
  auto work = [&]() {
    for (int i = next.fetch_add(1); i < levels; i = next.fetch_add(1)) {
      try {
        if (cfg.mode == RunMode::vp1d1v)
          vp_errors(cfg, 1 << i, results[i]);
        else
          advect_errors(cfg, 1 << i, results[i]);
      } catch (const std::exception& e) {
        results[i].error = e.what();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (auto& th : pool) th.join();

  for (const auto& r : results)
    if (!r.error.empty()) throw ConfigError(r.error);

  std::vector<ConvergenceRow> rows;
  for (const auto& r : results) rows.push_back({r.mesh, r.l2, r.linf, r.cpu});
  std::fputs(format_convergence_table(rows).c_str(), stdout);

  const std::string base = cfg.problem + "_convergence";
  write_convergence_table(base + ".csv", rows);
  std::printf("table              %s.csv\n", base.c_str());

  if (cfg.mode == RunMode::advect2d) {
    std::vector<ConvergenceRow> post;
    for (const auto& r : results) post.push_back({r.mesh, r.l2_post, r.linf_post, r.cpu});
    std::fputs("after filtering:\n", stdout);
    std::fputs(format_convergence_table(post).c_str(), stdout);
    write_convergence_table(base + "_filtered.csv", post);
    std::printf("table              %s_filtered.csv\n", base.c_str());
  }
  return 0;
}
