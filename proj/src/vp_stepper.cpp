#include "lomac/vp_stepper.hpp"

#include <chrono>
#include <cmath>

namespace lomac {

namespace {

Mesh1D make_mesh(double a, double b, int n, Boundary bc, double fraction, std::uint64_t seed) {
  Mesh1D mesh = build_uniform(a, b, n, bc);
  if (fraction > 0.0) mesh = perturb_mesh(mesh, fraction, seed);
  return mesh;
}

MacroState axpy(const MacroState& a, double wa, const MacroState& b, double wb) {
  return {wa * a.rho + wb * b.rho, wa * a.J + wb * b.J, wa * a.e + wb * b.e};
}

MacroState add_rate(const MacroState& U, double dt, const MacroRates& r) {
  return {U.rho + dt * r.rho, U.J + dt * r.J, U.e + dt * r.e};
}

}  // namespace

VpSolver::VpSolver(const VlasovProblem& problem, const VpOptions& opts)
    : problem_(problem),
      opts_(opts),
      mesh_x_(make_mesh(problem.x_min, problem.x_max, opts.nx, Boundary::periodic,
                        opts.perturb_fraction, opts.perturb_seed)),
      mesh_v_(make_mesh(problem.v_min, problem.v_max, opts.nv, Boundary::open,
                        opts.perturb_fraction, opts.perturb_seed + 1)),
      basis_(nodal_basis(gauss_rule(opts.degree))),
      xgrid_(nodal_grid(mesh_x_, basis_.rule)),
      vgrid_(nodal_grid(mesh_v_, basis_.rule)),
      dx_(build_upwind_pair(mesh_x_, basis_)),
      dv_(build_upwind_pair(mesh_v_, basis_)),
      vspace_(),
      field_(mesh_x_, basis_) {
  if (opts.eps < 0.0) throw std::invalid_argument("VpSolver: negative truncation tolerance");
  Eigen::VectorXd wM(vgrid_.size());
  for (int i = 0; i < vgrid_.size(); ++i) wM[i] = problem_.weight(vgrid_.points[i]);
  vspace_ = build_v_space(vgrid_, wM);
  trunc_weights_.left = Eigen::Map<const Eigen::VectorXd>(xgrid_.weights.data(), xgrid_.size());
  trunc_weights_.right = vspace_.wv;
  trunc_weights_.right_multiplier = vspace_.wM;
  xpts_ = Eigen::Map<const Eigen::VectorXd>(xgrid_.points.data(), xgrid_.size());
  wx_ = trunc_weights_.left;

  const double cfl = opts_.cfl > 0.0 ? opts_.cfl : (opts_.degree <= 1 ? 0.2 : 0.1);
  const double v_max = std::max(std::abs(problem_.v_min), std::abs(problem_.v_max));
  dt_ = opts_.dt_override > 0.0 ? opts_.dt_override : cfl * mesh_x_.min_h() / v_max;
}

MacroSource VpSolver::macro_source_fn() const {
  if (!problem_.macro_source) return {};
  return [this](double t, const Eigen::VectorXd& E) {
    return problem_.macro_source(t, xpts_, E);
  };
}

KineticState VpSolver::initialize() const {
  std::vector<double> coeffs;
  std::vector<Eigen::VectorXd> lefts, rights;
  for (const SeparableTerm& term : problem_.initial) {
    Eigen::VectorXd gx(xgrid_.size()), gv(vgrid_.size());
    for (int i = 0; i < xgrid_.size(); ++i) gx[i] = term.x_part(xgrid_.points[i], 0.0);
    for (int i = 0; i < vgrid_.size(); ++i) gv[i] = term.v_part(vgrid_.points[i]);
    coeffs.push_back(1.0);
    lefts.push_back(gx);
    rights.push_back(gv);
  }
  KineticState state;
  state.cur.f = from_separable(coeffs, lefts, rights);
  const MacroMoments mom = moments(state.cur.f, vspace_);
  state.field = field_.solve(mom.rho);
  state.cur.U.rho = mom.rho;
  state.cur.U.J = mom.J;
  state.cur.U.e = mom.kappa + 0.5 * state.field.E.cwiseAbs2();
  state.t = 0.0;
  state.steps_taken = 0;
  return state;
}

LowRankFunction VpSolver::transport_rhs(const LowRankFunction& f, const Eigen::VectorXd& E,
                                        double t) const {
  const Eigen::VectorXd vp = vspace_.v.cwiseMax(0.0);
  const Eigen::VectorXd vm = vspace_.v.cwiseMin(0.0);
  const Eigen::VectorXd Ep = E.cwiseMax(0.0);
  const Eigen::VectorXd Em = E.cwiseMin(0.0);

  auto scale_by = [](const Eigen::VectorXd& d) {
    return [d](const Eigen::MatrixXd& m) { return Eigen::MatrixXd(d.asDiagonal() * m); };
  };
  auto derive = [](const UpwindDerivative& op) {
    return [&op](const Eigen::MatrixXd& m) { return op.apply(m); };
  };

  LowRankFunction rhs = concat(map_factors(f, derive(dx_.plus), scale_by(vp)),
                               map_factors(f, derive(dx_.minus), scale_by(vm)), -1.0, -1.0);
  rhs = concat(rhs, map_factors(f, scale_by(Ep), derive(dv_.plus)), 1.0, -1.0);
  rhs = concat(rhs, map_factors(f, scale_by(Em), derive(dv_.minus)), 1.0, -1.0);
  for (const SeparableTerm& term : problem_.kinetic_source) {
    Eigen::VectorXd gx(xgrid_.size()), gv(vgrid_.size());
    for (int i = 0; i < xgrid_.size(); ++i) gx[i] = term.x_part(xgrid_.points[i], t);
    for (int i = 0; i < vgrid_.size(); ++i) gv[i] = term.v_part(vgrid_.points[i]);
    rhs = concat(rhs, from_separable({1.0}, {gx}, {gv}));
  }
  return rhs;
}

Snapshot VpSolver::correct(const LowRankFunction& f_star, const MacroState& U_next,
                           FieldState* field_out) const {
  const ConservativeSplit split = conservative_decompose(f_star, vspace_);
  const FieldState field = field_.solve(U_next.rho);
  MacroMoments target;
  target.rho = U_next.rho;
  target.J = U_next.J;
  target.kappa = kinetic_energy_from_total(U_next.e, field.E);
  const LowRankFunction f1m = build_f1(target, vspace_);
  const LowRankFunction f2t = truncate_weighted(split.f2, opts_.eps, trunc_weights_,
                                                opts_.criterion);
  Snapshot next;
  next.f = concat(f1m, f2t);
  next.U = U_next;
  if (next.f.rank() > opts_.rank_cap)
    throw NumericalAbort("rank cap exceeded: rank " + std::to_string(next.f.rank()) +
                         " > cap " + std::to_string(opts_.rank_cap));
  if (!next.f.coeff.allFinite() || !next.f.left.allFinite() || !next.f.right.allFinite())
    throw NumericalAbort("non-finite values in the kinetic solution");
  if (field_out) *field_out = field;
  return next;
}

Snapshot VpSolver::euler_stage(const Snapshot& s, double t, double dt) const {
  const MacroMoments mom = moments(s.f, vspace_);
  const Eigen::VectorXd E = field_.solve(mom.rho).E;
  const LowRankFunction f_star = concat(s.f, transport_rhs(s.f, E, t), 1.0, dt);
  const KfvsFluxes flux = kfvs_fluxes(s.f, vspace_);
  const MacroRates rate = macro_rhs(flux, s.U.rho, E, dx_, t, macro_source_fn());
  return correct(f_star, add_rate(s.U, dt, rate));
}

void VpSolver::heun_step(KineticState& state) const {
  const Snapshot a = euler_stage(state.cur, state.t, dt_);
  const Snapshot b = euler_stage(a, state.t + dt_, dt_);
  const LowRankFunction f_star = concat(state.cur.f, b.f, 0.5, 0.5);
  const MacroState U_next = axpy(state.cur.U, 0.5, b.U, 0.5);
  FieldState field;
  Snapshot next = correct(f_star, U_next, &field);
  state.prev2 = state.prev1;
  state.prev1 = state.cur;
  state.cur = std::move(next);
  state.field = field;
  state.t += dt_;
  state.steps_taken += 1;
}

void VpSolver::multistep(KineticState& state) const {
  const MacroMoments mom = moments(state.cur.f, vspace_);
  const Eigen::VectorXd E = field_.solve(mom.rho).E;
  const LowRankFunction f_star =
      concat(concat(state.prev2.f, state.cur.f, 0.25, 0.75),
             transport_rhs(state.cur.f, E, state.t), 1.0, 1.5 * dt_);
  const KfvsFluxes flux = kfvs_fluxes(state.cur.f, vspace_);
  const MacroState U_next = macro_step(state.cur.U, state.prev2.U, flux, E, dt_, dx_, state.t,
                                       macro_source_fn());
  FieldState field;
  Snapshot next = correct(f_star, U_next, &field);
  state.prev2 = state.prev1;
  state.prev1 = state.cur;
  state.cur = std::move(next);
  state.field = field;
  state.t += dt_;
  state.steps_taken += 1;
}

void VpSolver::step(KineticState& state) const {
  if (state.steps_taken < 2)
    heun_step(state);
  else
    multistep(state);
}

DiagnosticsRecord VpSolver::diagnostics(const KineticState& state) const {
  DiagnosticsRecord rec;
  rec.t = state.t;
  rec.mass = wx_.dot(state.cur.U.rho);
  rec.momentum = wx_.dot(state.cur.U.J);
  rec.total_energy = wx_.dot(state.cur.U.e);
  rec.field_energy = field_.electric_energy(state.field.E);
  rec.kinetic_energy = rec.total_energy - rec.field_energy;
  rec.rank = state.cur.f.rank();
  return rec;
}

RunResult VpSolver::run(double t_end, double output_interval,
                        std::vector<KineticState>* snapshots_out,
                        const std::vector<double>& snapshot_times) const {
  if (t_end <= 0.0) throw std::invalid_argument("VpSolver::run: t_end must be positive");
  const auto wall0 = std::chrono::steady_clock::now();
  RunResult result;
  const int steps = std::max(1, static_cast<int>(std::ceil(t_end / dt_ - 1e-12)));
  const double dt_run = t_end / steps;
  // The multistep scheme needs one fixed dt across the whole run.
  VpSolver runner = *this;
  runner.dt_ = dt_run;
  result.dt = dt_run;
  result.steps = steps;

  KineticState state = runner.initialize();
  DiagnosticsRecord first = runner.diagnostics(state);
  result.series.push_back(first);
  result.rank_history.push_back(first.rank);
  const double mass0 = first.mass, mom0 = first.momentum, en0 = first.total_energy;
  double next_output = output_interval > 0.0 ? output_interval : 0.0;
  std::size_t next_snapshot = 0;

  for (int n = 1; n <= steps; ++n) {
    runner.step(state);
    DiagnosticsRecord rec = runner.diagnostics(state);
    rec.mass_rel_dev = std::abs(rec.mass - mass0) / std::max(std::abs(mass0), 1e-300);
    rec.momentum_abs_dev = std::abs(rec.momentum - mom0);
    rec.energy_rel_dev = std::abs(rec.total_energy - en0) / std::max(std::abs(en0), 1e-300);
    result.max_mass_rel_dev = std::max(result.max_mass_rel_dev, rec.mass_rel_dev);
    result.max_momentum_abs_dev = std::max(result.max_momentum_abs_dev, rec.momentum_abs_dev);
    result.max_energy_rel_dev = std::max(result.max_energy_rel_dev, rec.energy_rel_dev);
    result.rank_history.push_back(rec.rank);
    if (output_interval <= 0.0 || state.t >= next_output - 0.5 * dt_run || n == steps) {
      result.series.push_back(rec);
      while (output_interval > 0.0 && next_output <= state.t + 0.5 * dt_run)
        next_output += output_interval;
    }
    if (snapshots_out && next_snapshot < snapshot_times.size() &&
        state.t >= snapshot_times[next_snapshot] - 0.5 * dt_run) {
      snapshots_out->push_back(state);
      ++next_snapshot;
    }
  }
  result.cpu_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - wall0).count();
  return result;
}

}  // namespace lomac
