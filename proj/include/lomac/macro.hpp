#pragma once

#include <Eigen/Dense>
#include <functional>

#include "lomac/dg_core.hpp"
#include "lomac/moments.hpp"

namespace lomac {

/// Conserved macroscopic densities on the nodal x-grid.  e is the total
/// energy density kappa + E^2/2.
struct MacroState {
  Eigen::VectorXd rho;
  Eigen::VectorXd J;
  Eigen::VectorXd e;
};

/// Kinetic flux-vector-split fluxes of (rho, J, e): the plus component
/// gathers transport by v > 0, the minus component by v < 0, so
/// plus + minus recovers the unsplit moments (v, v^2, v^3/2) of f.
struct KfvsFluxes {
  Eigen::VectorXd mass_plus, mass_minus;      // <f, v+->
  Eigen::VectorXd momentum_plus, momentum_minus;  // <f, (v+-)^2>
  Eigen::VectorXd energy_plus, energy_minus;  // <f, (v+-)^3/2>
};

KfvsFluxes kfvs_fluxes(const LowRankFunction& f, const VInnerSpace& space);

/// Additional (manufactured) right-hand sides evaluated at the x-nodes; the
/// self-consistent rho*E momentum source is added separately.
struct MacroRates {
  Eigen::VectorXd rho;
  Eigen::VectorXd J;
  Eigen::VectorXd e;
};
using MacroSource = std::function<MacroRates(double t, const Eigen::VectorXd& E)>;

/// d/dt of (rho, J, e) in conservative form:
///   -(D+ F+ + D- F-)  +  (0, rho*E, 0)  +  manufactured source.
/// The plus flux pairs with the left-biased derivative and vice versa.  Cell
/// totals of the divergence telescope, so the discrete totals obey
/// d<rho> = 0, d<J> = <rho*E> + <S_J>, d<e> = <S_e> exactly.
MacroRates macro_rhs(const KfvsFluxes& flux, const Eigen::VectorXd& rho,
                     const Eigen::VectorXd& E, const UpwindOperatorPair& ops, double t,
                     const MacroSource& source);

/// Three-level second-order strong-stability-preserving update
///   U^{n+1} = 1/4 U^{n-2} + 3/4 U^n + 3/2 dt * macro_rhs(t_n).
MacroState macro_step(const MacroState& U_n, const MacroState& U_nm2, const KfvsFluxes& flux,
                      const Eigen::VectorXd& E_n, double dt, const UpwindOperatorPair& ops,
                      double t_n, const MacroSource& source);

/// kappa = e - E^2/2 elementwise.
Eigen::VectorXd kinetic_energy_from_total(const Eigen::VectorXd& e, const Eigen::VectorXd& E);

}  // namespace lomac
