#pragma once

#include <Eigen/Dense>

#include "lomac/dg_core.hpp"
#include "lomac/mesh.hpp"

namespace lomac {

/// Electrostatic field on the nodal x-grid: E solves E' = rho - rho0 with
/// periodic boundary and zero mean, phi solves phi' = -E with zero mean.
struct FieldState {
  Eigen::VectorXd E;
  Eigen::VectorXd phi;
  double rho0 = 0.0;  // quadrature mean of rho, recomputed at solve time
};

/// Field solver for -phi'' = rho - rho0 on a periodic 1D mesh.
///
/// The nodal charge density defines a piecewise polynomial; E and phi are its
/// exact single and double primitives (continuous piecewise polynomials,
/// periodic because rho - rho0 integrates to zero) sampled back at the nodes
/// and shifted to zero quadrature mean.  Nodal accuracy is O(h^{k+1}) or
/// better, the gauges <E,1> = <phi,1> = 0 hold exactly, and the discrete
/// momentum source sum_i w_i rho_i E_i cancels by telescoping to round-off on
/// any mesh -- the property the macroscopic momentum balance depends on.  The
/// per-cell integration matrices are precomputed once per mesh; a solve is
/// O(N).
class FieldSolver {
 public:
  FieldSolver(const Mesh1D& mesh, const NodalBasis& basis);

  FieldState solve(const Eigen::VectorXd& rho) const;

  /// 0.5 * sum_i w_i E_i^2.
  double electric_energy(const Eigen::VectorXd& E) const;

  const Eigen::VectorXd& node_weights() const { return weights_; }

 private:
  std::vector<double> h_;
  double domain_length_ = 0.0;
  Eigen::MatrixXd partial_;    // partial_(g, j) = int_{-1/2}^{xi_g} L_j
  Eigen::MatrixXd partial2_;   // double partial integral of L_j
  Eigen::VectorXd full2_;      // whole-cell integral of int_{-1/2}^{s} L_j
  Eigen::VectorXd nodes_half_; // reference nodes shifted to [0, 1]
  Eigen::VectorXd cell_row_;   // reference-cell quadrature weights
  Eigen::VectorXd weights_;    // global nodal weights
};

}  // namespace lomac
