#pragma once

#include <functional>
#include <string>
#include <vector>

#include "lomac/macro.hpp"

namespace lomac {

/// One separable term g(x, t) * phi(v).
struct SeparableTerm {
  std::function<double(double x, double t)> x_part;
  std::function<double(double v)> v_part;
};

/// A 1D1V Vlasov-Poisson setup: phase-space box, initial data as separable
/// terms, the projection weight, optional manufactured kinetic and
/// macroscopic sources, and exact fields where known.
struct VlasovProblem {
  std::string name;
  double x_min = 0.0, x_max = 1.0;
  double v_min = -1.0, v_max = 1.0;
  std::function<double(double v)> weight;      // w_M
  std::vector<SeparableTerm> initial;
  std::vector<SeparableTerm> kinetic_source;   // empty: homogeneous equation
  /// Manufactured (rho, J, e) right-hand sides beyond the rho*E coupling,
  /// evaluated at the nodal x vector; E enters the energy source.
  std::function<MacroRates(double t, const Eigen::VectorXd& x, const Eigen::VectorXd& E)>
      macro_source;
  std::function<double(double x, double v, double t)> exact_f;
  std::function<double(double x, double t)> exact_rho;
};

VlasovProblem weak_landau_problem();
VlasovProblem strong_landau_problem();
VlasovProblem bump_on_tail_problem();
VlasovProblem forced_vp_problem();

/// Lookup by registry name; throws std::invalid_argument for unknown names.
VlasovProblem vlasov_problem(const std::string& name);

/// Default truncation tolerance per benchmark (overridable in the config).
double default_epsilon(const std::string& name);

}  // namespace lomac
