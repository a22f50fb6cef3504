#pragma once

#include <vector>

#include "lomac/dg_core.hpp"
#include "lomac/lowrank.hpp"
#include "lomac/mesh.hpp"
#include "lomac/siac.hpp"

namespace lomac {

/// Constant-coefficient advection u_t + u_x1 + u_x2 = 0 on [0, 2pi]^2 with
/// the separable initial profile sin(x1 + x2) and periodic boundaries.  The
/// exact solution sin(x1 + x2 - 2t) stays rank two for all time.
struct AdvectionOptions {
  int degree = 1;
  int n1 = 16;
  int n2 = 16;
  double eps = 1e-4;
  TruncationCriterion criterion = TruncationCriterion::relative;
  double dt_override = 0.0;  // 0 selects (h/3)^{3/2}, h the cell width
  int rank_cap = 64;
};

struct AdvectionResult {
  LowRankFunction u;
  std::vector<int> rank_history;  // rank after each truncation
  double l2_error = 0.0;          // weighted L2 against the exact solution
  double linf_error = 0.0;        // nodal max error
  bool postprocessed = false;
  double l2_post = 0.0;  // same norms after the smoothness-increasing filter
  double linf_post = 0.0;
  double dt = 0.0;
  int steps = 0;
  double cpu_seconds = 0.0;
};

/// Low-rank multistep solver: two self-starting Heun steps, then the
/// three-level update u^{n+1} = 1/4 u^{n-2} + 3/4 u^n + 3/2 dt F(u^n), with a
/// weighted truncation after every combination.  Upwind (left-biased)
/// derivatives in both directions since both speeds are +1.
class AdvectionSolver {
 public:
  explicit AdvectionSolver(const AdvectionOptions& opts);

  /// Integrate to t_end (step count rounded so the horizon is hit exactly)
  /// and measure errors; optionally filter the final solution first.
  AdvectionResult run(double t_end, bool postprocess) const;

  /// Exact nodal solution as a rank-two function, for error measurement.
  LowRankFunction exact(double t) const;

  const Mesh1D& mesh1() const { return mesh1_; }
  const Mesh1D& mesh2() const { return mesh2_; }
  const NodalBasis& basis() const { return basis_; }
  const NodalGrid& grid1() const { return grid1_; }
  const NodalGrid& grid2() const { return grid2_; }
  double default_dt() const;

 private:
  LowRankFunction rhs(const LowRankFunction& u) const;
  LowRankFunction truncate(const LowRankFunction& u) const;

  AdvectionOptions opts_;
  Mesh1D mesh1_, mesh2_;
  NodalBasis basis_;
  NodalGrid grid1_, grid2_;
  UpwindOperatorPair d1_, d2_;
  WeightPair weights_;
};

}  // namespace lomac
