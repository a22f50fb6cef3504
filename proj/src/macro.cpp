#include "lomac/macro.hpp"

#include <stdexcept>

namespace lomac {

KfvsFluxes kfvs_fluxes(const LowRankFunction& f, const VInnerSpace& space) {
  if (f.cols() != space.size())
    throw std::invalid_argument("kfvs_fluxes: velocity grid mismatch");
  const Eigen::ArrayXd vp = space.v.array().max(0.0);
  const Eigen::ArrayXd vm = space.v.array().min(0.0);
  auto vmoment = [&](const Eigen::ArrayXd& phi) {
    return Eigen::VectorXd(f.left * (f.coeff.asDiagonal() *
                                     (f.right.transpose() * (phi * space.wv.array()).matrix())));
  };
  KfvsFluxes flux;
  flux.mass_plus = vmoment(vp);
  flux.mass_minus = vmoment(vm);
  flux.momentum_plus = vmoment(vp.square());
  flux.momentum_minus = vmoment(vm.square());
  flux.energy_plus = vmoment(0.5 * vp.cube());
  flux.energy_minus = vmoment(0.5 * vm.cube());
  return flux;
}

MacroRates macro_rhs(const KfvsFluxes& flux, const Eigen::VectorXd& rho,
                     const Eigen::VectorXd& E, const UpwindOperatorPair& ops, double t,
                     const MacroSource& source) {
  MacroRates rate;
  rate.rho = -(ops.plus.apply(flux.mass_plus) + ops.minus.apply(flux.mass_minus));
  rate.J = -(ops.plus.apply(flux.momentum_plus) + ops.minus.apply(flux.momentum_minus));
  rate.J.array() += rho.array() * E.array();
  rate.e = -(ops.plus.apply(flux.energy_plus) + ops.minus.apply(flux.energy_minus));
  if (source) {
    const MacroRates extra = source(t, E);
    rate.rho += extra.rho;
    rate.J += extra.J;
    rate.e += extra.e;
  }
  return rate;
}

MacroState macro_step(const MacroState& U_n, const MacroState& U_nm2, const KfvsFluxes& flux,
                      const Eigen::VectorXd& E_n, double dt, const UpwindOperatorPair& ops,
                      double t_n, const MacroSource& source) {
  if (dt <= 0.0) throw std::invalid_argument("macro_step: dt must be positive");
  const MacroRates rate = macro_rhs(flux, U_n.rho, E_n, ops, t_n, source);
  MacroState next;
  next.rho = 0.25 * U_nm2.rho + 0.75 * U_n.rho + 1.5 * dt * rate.rho;
  next.J = 0.25 * U_nm2.J + 0.75 * U_n.J + 1.5 * dt * rate.J;
  next.e = 0.25 * U_nm2.e + 0.75 * U_n.e + 1.5 * dt * rate.e;
  return next;
}

Eigen::VectorXd kinetic_energy_from_total(const Eigen::VectorXd& e, const Eigen::VectorXd& E) {
  if (e.size() != E.size())
    throw std::invalid_argument("kinetic_energy_from_total: length mismatch");
  return e - 0.5 * E.cwiseAbs2();
}

}  // namespace lomac
