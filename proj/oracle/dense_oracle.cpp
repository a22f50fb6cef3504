#include "dense_oracle.hpp"

#include <cmath>
#include <numbers>

namespace lomac::oracle {

Eigen::MatrixXd dense_transport(const Eigen::MatrixXd& F, const Eigen::VectorXd& E,
                                const UpwindOperatorPair& dx, const UpwindOperatorPair& dv,
                                const Eigen::VectorXd& v) {
  if (F.rows() != E.size() || F.cols() != v.size())
    throw std::invalid_argument("dense_transport: shape mismatch");
  const Eigen::VectorXd vp = v.cwiseMax(0.0), vm = v.cwiseMin(0.0);
  const Eigen::VectorXd Ep = E.cwiseMax(0.0), Em = E.cwiseMin(0.0);
  // Columns are x-profiles; v-derivatives act on the transposed array.
  const Eigen::MatrixXd Ft = F.transpose();
  Eigen::MatrixXd out = dx.plus.apply(F) * vp.asDiagonal();
  out += dx.minus.apply(F) * vm.asDiagonal();
  out += Ep.asDiagonal() * dv.plus.apply(Ft).transpose();
  out += Em.asDiagonal() * dv.minus.apply(Ft).transpose();
  return out;
}

DenseSolver::DenseSolver(const VlasovProblem& problem, const VpOptions& opts, bool corrected)
    : solver_(problem, opts), corrected_(corrected) {
  if (static_cast<long>(solver_.xgrid().size()) * solver_.vgrid().size() > (1 << 22))
    throw std::invalid_argument("DenseSolver: grid too large for the dense mirror");
}

void DenseSolver::initialize() {
  const NodalGrid& xg = solver_.xgrid();
  const NodalGrid& vg = solver_.vgrid();
  f_.setZero(xg.size(), vg.size());
  for (const SeparableTerm& term : solver_.problem().initial)
    for (int i = 0; i < xg.size(); ++i)
      for (int j = 0; j < vg.size(); ++j)
        f_(i, j) += term.x_part(xg.points[i], 0.0) * term.v_part(vg.points[j]);
  const DenseMoments mom = dense_moments(f_);
  E_ = solver_.field_solver().solve(mom.rho).E;
  U_.rho = mom.rho;
  U_.J = mom.J;
  U_.e = mom.kappa + 0.5 * E_.cwiseAbs2();
  prev1_ = prev2_ = f_;
  U_prev1_ = U_prev2_ = U_;
  t_ = 0.0;
  steps_ = 0;
}

DenseSolver::DenseMoments DenseSolver::dense_moments(const Eigen::MatrixXd& F) const {
  const VInnerSpace& s = solver_.vspace();
  DenseMoments m;
  m.rho = F * s.wv;
  m.J = F * s.wv.cwiseProduct(s.v);
  m.kappa = F * (0.5 * s.wv.cwiseProduct(s.v.cwiseAbs2()));
  return m;
}

Eigen::MatrixXd DenseSolver::dense_f1(const Eigen::VectorXd& rho, const Eigen::VectorXd& J,
                                      const Eigen::VectorXd& kappa) const {
  const VInnerSpace& s = solver_.vspace();
  const Eigen::Matrix3d& inv = s.moment_matrix_inv;
  Eigen::MatrixXd f1 = Eigen::MatrixXd::Zero(rho.size(), s.size());
  const Eigen::VectorXd basis[3] = {s.basis1, s.basis_v, s.basis_q};
  for (int p = 0; p < 3; ++p) {
    const Eigen::VectorXd a = inv(p, 0) * rho + inv(p, 1) * J + inv(p, 2) * kappa;
    f1 += a * s.wM.cwiseProduct(basis[p]).transpose();
  }
  return f1;
}

KfvsFluxes DenseSolver::dense_kfvs(const Eigen::MatrixXd& F) const {
  const VInnerSpace& s = solver_.vspace();
  const Eigen::VectorXd vp = s.v.cwiseMax(0.0), vm = s.v.cwiseMin(0.0);
  KfvsFluxes flux;
  flux.mass_plus = F * s.wv.cwiseProduct(vp);
  flux.mass_minus = F * s.wv.cwiseProduct(vm);
  flux.momentum_plus = F * s.wv.cwiseProduct(vp.cwiseAbs2());
  flux.momentum_minus = F * s.wv.cwiseProduct(vm.cwiseAbs2());
  flux.energy_plus = F * (0.5 * s.wv.cwiseProduct(vp.array().pow(3).matrix()));
  flux.energy_minus = F * (0.5 * s.wv.cwiseProduct(vm.array().pow(3).matrix()));
  return flux;
}

Eigen::MatrixXd DenseSolver::dense_rhs(const Eigen::MatrixXd& F, const Eigen::VectorXd& E,
                                       double t) const {
  const NodalGrid& xg = solver_.xgrid();
  const NodalGrid& vg = solver_.vgrid();
  Eigen::MatrixXd rhs =
      -dense_transport(F, E, solver_.dx_ops(), solver_.dv_ops(), solver_.vspace().v);
  for (const SeparableTerm& term : solver_.problem().kinetic_source)
    for (int i = 0; i < xg.size(); ++i)
      for (int j = 0; j < vg.size(); ++j)
        rhs(i, j) += term.x_part(xg.points[i], t) * term.v_part(vg.points[j]);
  return rhs;
}

void DenseSolver::correct(const Eigen::MatrixXd& f_star, const MacroState& U_next,
                          Eigen::MatrixXd& f_out, Eigen::VectorXd& E_out) const {
  const DenseMoments star = dense_moments(f_star);
  const FieldState field = solver_.field_solver().solve(U_next.rho);
  const Eigen::VectorXd kappa = kinetic_energy_from_total(U_next.e, field.E);
  f_out = f_star - dense_f1(star.rho, star.J, star.kappa) +
          dense_f1(U_next.rho, U_next.J, kappa);
  E_out = field.E;
}

void DenseSolver::euler_stage(const Eigen::MatrixXd& F, const MacroState& U, double t, double dt,
                              Eigen::MatrixXd& f_out, MacroState& U_out) const {
  const DenseMoments mom = dense_moments(F);
  const Eigen::VectorXd E = solver_.field_solver().solve(mom.rho).E;
  const Eigen::MatrixXd f_star = F + dt * dense_rhs(F, E, t);
  const MacroRates rate =
      macro_rhs(dense_kfvs(F), U.rho, E, solver_.dx_ops(), t, solver_.macro_source_fn());
  MacroState U_next{U.rho + dt * rate.rho, U.J + dt * rate.J, U.e + dt * rate.e};
  if (!corrected_) {
    f_out = f_star;
    U_out = std::move(U_next);
    return;
  }
  Eigen::VectorXd E_unused;
  correct(f_star, U_next, f_out, E_unused);
  U_out = std::move(U_next);
}

void DenseSolver::step() {
  const double h = solver_.dt();
  Eigen::MatrixXd f_next;
  MacroState U_next;
  if (steps_ < 2) {
    Eigen::MatrixXd fa, fb;
    MacroState Ua, Ub;
    euler_stage(f_, U_, t_, h, fa, Ua);
    euler_stage(fa, Ua, t_ + h, h, fb, Ub);
    const Eigen::MatrixXd f_star = 0.5 * f_ + 0.5 * fb;
    U_next = MacroState{0.5 * (U_.rho + Ub.rho), 0.5 * (U_.J + Ub.J), 0.5 * (U_.e + Ub.e)};
    if (corrected_)
      correct(f_star, U_next, f_next, E_);
    else
      f_next = f_star;
  } else {
    const DenseMoments mom = dense_moments(f_);
    const Eigen::VectorXd E = solver_.field_solver().solve(mom.rho).E;
    const Eigen::MatrixXd f_star = 0.25 * prev2_ + 0.75 * f_ + 1.5 * h * dense_rhs(f_, E, t_);
    U_next = macro_step(U_, U_prev2_, dense_kfvs(f_), E, h, solver_.dx_ops(), t_,
                        solver_.macro_source_fn());
    if (corrected_)
      correct(f_star, U_next, f_next, E_);
    else
      f_next = f_star;
  }
  prev2_ = std::move(prev1_);
  prev1_ = std::move(f_);
  f_ = std::move(f_next);
  U_prev2_ = std::move(U_prev1_);
  U_prev1_ = std::move(U_);
  U_ = std::move(U_next);
  t_ += h;
  steps_ += 1;
}

DiagnosticsRecord DenseSolver::diagnostics() const {
  const Eigen::VectorXd& wx = solver_.x_weights();
  DiagnosticsRecord rec;
  rec.t = t_;
  if (corrected_) {
    rec.mass = wx.dot(U_.rho);
    rec.momentum = wx.dot(U_.J);
    rec.total_energy = wx.dot(U_.e);
    rec.field_energy = solver_.field_solver().electric_energy(E_);
    rec.kinetic_energy = rec.total_energy - rec.field_energy;
  } else {
    const DenseMoments mom = dense_moments(f_);
    const Eigen::VectorXd E = solver_.field_solver().solve(mom.rho).E;
    rec.mass = wx.dot(mom.rho);
    rec.momentum = wx.dot(mom.J);
    rec.field_energy = solver_.field_solver().electric_energy(E);
    rec.kinetic_energy = wx.dot(mom.kappa);
    rec.total_energy = rec.kinetic_energy + rec.field_energy;
  }
  rec.rank = static_cast<int>(std::min(f_.rows(), f_.cols()));
  return rec;
}

DenseAdvection::DenseAdvection(const AdvectionOptions& opts, double dt)
    : mesh1_(build_uniform(0.0, 2.0 * std::numbers::pi, opts.n1, Boundary::periodic)),
      mesh2_(build_uniform(0.0, 2.0 * std::numbers::pi, opts.n2, Boundary::periodic)),
      basis_(nodal_basis(gauss_rule(opts.degree))),
      grid1_(nodal_grid(mesh1_, basis_.rule)),
      grid2_(nodal_grid(mesh2_, basis_.rule)),
      d1_(build_upwind_pair(mesh1_, basis_)),
      d2_(build_upwind_pair(mesh2_, basis_)),
      dt_(dt) {}

void DenseAdvection::initialize() {
  u_.resize(grid1_.size(), grid2_.size());
  for (int i = 0; i < grid1_.size(); ++i)
    for (int j = 0; j < grid2_.size(); ++j)
      u_(i, j) = std::sin(grid1_.points[i] + grid2_.points[j]);
  prev1_ = prev2_ = u_;
  t_ = 0.0;
  steps_ = 0;
}

Eigen::MatrixXd DenseAdvection::rhs(const Eigen::MatrixXd& u) const {
  const Eigen::MatrixXd ut = u.transpose();
  return -d1_.plus.apply(u) - d2_.plus.apply(ut).transpose();
}

void DenseAdvection::step() {
  Eigen::MatrixXd next;
  if (steps_ < 2) {
    const Eigen::MatrixXd s1 = u_ + dt_ * rhs(u_);
    const Eigen::MatrixXd s2 = s1 + dt_ * rhs(s1);
    next = 0.5 * u_ + 0.5 * s2;
  } else {
    next = 0.25 * prev2_ + 0.75 * u_ + 1.5 * dt_ * rhs(u_);
  }
  prev2_ = std::move(prev1_);
  prev1_ = std::move(u_);
  u_ = std::move(next);
  t_ += dt_;
  steps_ += 1;
}

}  // namespace lomac::oracle
