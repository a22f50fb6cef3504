#pragma once

#include <Eigen/Dense>

#include "lomac/advection.hpp"
#include "lomac/benchmarks.hpp"
#include "lomac/vp_stepper.hpp"

namespace lomac::oracle {

/// Upwind transport operator applied to the full tensor grid:
///   (A F)(i, j) = v+_j (D+x F(:,j))_i + v-_j (D-x F(:,j))_i
///               + E+_i (D+v F(i,:))_j + E-_i (D-v F(i,:))_j
/// Rows index x-nodes, columns v-nodes.
Eigen::MatrixXd dense_transport(const Eigen::MatrixXd& F, const Eigen::VectorXd& E,
                                const UpwindOperatorPair& dx, const UpwindOperatorPair& dv,
                                const Eigen::VectorXd& v);

/// Full-grid (never factorized) mirror of the low-rank kinetic stepper,
/// intended purely as a cross-check: with the conservative correction
/// enabled it runs the identical start-up, multistep, split and macro update
/// on the dense nodal array, so a zero-tolerance low-rank run must reproduce
/// it to round-off.  With `corrected = false` it runs the plain multistep
/// scheme without the moment correction (the ablation case: mass leaks only
/// through the truncated v boundary at Maxwellian-tail level, energy drifts
/// at truncation/order level).
///
/// Construction shares the meshes/operators/inner-product tables of a
/// VpSolver built with the same options, so the comparison isolates the
/// representation and stepping logic.  Small grids only.
class DenseSolver {
 public:
  DenseSolver(const VlasovProblem& problem, const VpOptions& opts, bool corrected = true);

  void initialize();
  void step();

  double dt() const { return solver_.dt(); }
  double time() const { return t_; }
  int steps_taken() const { return steps_; }
  const Eigen::MatrixXd& f() const { return f_; }
  const VpSolver& shared() const { return solver_; }

  /// Totals from the dense kinetic moments (plus field energy); the
  /// corrected variant reports the tracked macro state like the low-rank
  /// stepper does.
  DiagnosticsRecord diagnostics() const;

 private:
  struct DenseMoments {
    Eigen::VectorXd rho, J, kappa;
  };
  DenseMoments dense_moments(const Eigen::MatrixXd& F) const;
  Eigen::MatrixXd dense_f1(const Eigen::VectorXd& rho, const Eigen::VectorXd& J,
                           const Eigen::VectorXd& kappa) const;
  KfvsFluxes dense_kfvs(const Eigen::MatrixXd& F) const;
  Eigen::MatrixXd dense_rhs(const Eigen::MatrixXd& F, const Eigen::VectorXd& E, double t) const;
  void correct(const Eigen::MatrixXd& f_star, const MacroState& U_next, Eigen::MatrixXd& f_out,
               Eigen::VectorXd& E_out) const;
  void euler_stage(const Eigen::MatrixXd& F, const MacroState& U, double t, double dt,
                   Eigen::MatrixXd& f_out, MacroState& U_out) const;

  VpSolver solver_;  // supplies meshes, operators, inner products, field solve
  bool corrected_ = true;
  Eigen::MatrixXd f_, prev1_, prev2_;
  MacroState U_, U_prev1_, U_prev2_;
  Eigen::VectorXd E_;
  double t_ = 0.0;
  int steps_ = 0;
};

/// Dense mirror of the 2D advection mode (unit speeds, periodic), same
/// start-up and multistep, no factorization.
class DenseAdvection {
 public:
  DenseAdvection(const AdvectionOptions& opts, double dt);

  void initialize();
  void step();
  const Eigen::MatrixXd& u() const { return u_; }
  double time() const { return t_; }

 private:
  Eigen::MatrixXd rhs(const Eigen::MatrixXd& u) const;

  Mesh1D mesh1_, mesh2_;
  NodalBasis basis_;
  NodalGrid grid1_, grid2_;
  UpwindOperatorPair d1_, d2_;
  double dt_ = 0.0;
  Eigen::MatrixXd u_, prev1_, prev2_;
  double t_ = 0.0;
  int steps_ = 0;
};

}  // namespace lomac::oracle
