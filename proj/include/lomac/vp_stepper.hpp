#pragma once

#include <optional>
#include <stdexcept>
#include <vector>

#include "lomac/benchmarks.hpp"
#include "lomac/poisson.hpp"

namespace lomac {

/// Raised when a run leaves the supported regime (rank cap exceeded or
/// non-finite values); maps to the CLI's numerical-abort exit code.
struct NumericalAbort : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct VpOptions {
  int degree = 1;
  int nx = 32;
  int nv = 64;
  double eps = 1e-5;
  TruncationCriterion criterion = TruncationCriterion::relative;
  double cfl = 0.0;          // 0: default 0.2 (degree 1) / 0.1 (degree >= 2)
  double dt_override = 0.0;  // > 0 replaces the CFL-derived step
  int rank_cap = 64;
  double perturb_fraction = 0.0;
  std::uint64_t perturb_seed = 0;
};

/// One time level: kinetic solution plus the macroscopic state it is
/// consistent with (moments(f) = (rho, J, e - E^2/2) to round-off).
struct Snapshot {
  LowRankFunction f;
  MacroState U;
};

struct KineticState {
  Snapshot cur;
  Snapshot prev1, prev2;  // time levels n-1 and n-2 once populated
  FieldState field;       // solved from cur.U.rho
  double t = 0.0;
  int steps_taken = 0;
};

struct DiagnosticsRecord {
  double t = 0.0;
  double mass = 0.0, mass_rel_dev = 0.0;
  double momentum = 0.0, momentum_abs_dev = 0.0;
  double kinetic_energy = 0.0, field_energy = 0.0;
  double total_energy = 0.0, energy_rel_dev = 0.0;
  int rank = 0;
};

struct RunResult {
  std::vector<DiagnosticsRecord> series;
  std::vector<int> rank_history;  // one entry per step, including t = 0
  double max_mass_rel_dev = 0.0;
  double max_momentum_abs_dev = 0.0;
  double max_energy_rel_dev = 0.0;
  double dt = 0.0;
  int steps = 0;
  double cpu_seconds = 0.0;
};

/// Discontinuous-Galerkin low-rank integrator for the 1D1V Vlasov-Poisson
/// system with macroscopic conservation correction.
///
/// Each advance: (1) solve E^n from the kinetic charge density, (2) propagate
/// f with the three-level multistep update in concatenated low-rank form,
/// (3) split the predictor into its moment part and remainder, (4) advance
/// (rho, J, e) with the conservative flux-split update, rebuild the moment
/// part from the updated macro state and re-add the weighted-truncated
/// remainder.  Start-up uses a two-stage second-order strong-stability
/// -preserving method with the same per-stage correction.
class VpSolver {
 public:
  VpSolver(const VlasovProblem& problem, const VpOptions& opts);

  KineticState initialize() const;

  /// Advance one step of size dt() (two-stage start-up until the multistep
  /// history is populated, three-level multistep afterwards).
  void step(KineticState& state) const;

  DiagnosticsRecord diagnostics(const KineticState& state) const;

  /// March to t_end with a fixed step dividing t_end exactly; records
  /// diagnostics every `output_interval` time units (0: every step) and
  /// tracks worst-case deviations of the conserved totals every step.
  RunResult run(double t_end, double output_interval = 0.0,
                std::vector<KineticState>* snapshots_out = nullptr,
                const std::vector<double>& snapshot_times = {}) const;

  double dt() const { return dt_; }
  const Mesh1D& mesh_x() const { return mesh_x_; }
  const Mesh1D& mesh_v() const { return mesh_v_; }
  const NodalGrid& xgrid() const { return xgrid_; }
  const NodalGrid& vgrid() const { return vgrid_; }
  const VInnerSpace& vspace() const { return vspace_; }
  const UpwindOperatorPair& dx_ops() const { return dx_; }
  const UpwindOperatorPair& dv_ops() const { return dv_; }
  const FieldSolver& field_solver() const { return field_; }
  const VlasovProblem& problem() const { return problem_; }
  const VpOptions& options() const { return opts_; }
  const Eigen::VectorXd& x_points() const { return xpts_; }
  const Eigen::VectorXd& x_weights() const { return wx_; }

  /// -(v f_x + E f_v) + psi(t) as a rank-(4r + sources) representation.
  LowRankFunction transport_rhs(const LowRankFunction& f, const Eigen::VectorXd& E,
                                double t) const;

  /// Steps 2-4 shared by every stage: conservative split of the predictor,
  /// field/kappa from the updated macro state, moment part rebuilt, remainder
  /// truncated.  Enforces the rank cap and finiteness.
  Snapshot correct(const LowRankFunction& f_star, const MacroState& U_next,
                   FieldState* field_out = nullptr) const;

  MacroSource macro_source_fn() const;

 private:
  Snapshot euler_stage(const Snapshot& s, double t, double dt) const;
  void heun_step(KineticState& state) const;
  void multistep(KineticState& state) const;

  VlasovProblem problem_;
  VpOptions opts_;
  Mesh1D mesh_x_, mesh_v_;
  NodalBasis basis_;
  NodalGrid xgrid_, vgrid_;
  UpwindOperatorPair dx_, dv_;
  VInnerSpace vspace_;
  FieldSolver field_;
  WeightPair trunc_weights_;
  Eigen::VectorXd xpts_, wx_;
  double dt_ = 0.0;
};

}  // namespace lomac
