#pragma once

#include <Eigen/Dense>

#include "lomac/mesh.hpp"

namespace lomac {

/// Lagrange nodal basis on the Gauss nodes of the reference cell [-1/2, 1/2].
///
/// deriv(a, b) = L_b'(xi_a), the standard differentiation matrix mapping
/// nodal values to nodal derivative values; its rows sum to zero.
/// left_face[b] = L_b(-1/2), right_face[b] = L_b(+1/2); both sum to one.
struct NodalBasis {
  GaussRule rule;
  Eigen::MatrixXd deriv;
  Eigen::VectorXd left_face;
  Eigen::VectorXd right_face;

  int nodes() const { return static_cast<int>(rule.nodes.size()); }
};

NodalBasis nodal_basis(const GaussRule& rule);

/// One-sided discontinuous-Galerkin derivative on a 1D mesh.
///
/// Approximates d/dx of the piecewise polynomial carried by the nodal vector,
/// taking interface traces from the upwind side: `bias_left` uses the cell to
/// the left (stable for positive transport speed), `bias_right` the cell to
/// the right.  Periodic meshes wrap; open meshes treat the missing upwind
/// trace as zero inflow.
///
/// Storage is two (k+1)x(k+1) reference blocks shared by all cells; cell i
/// contributes (own_block*u_i + neighbor_block*u_adj)/h_i, so one application
/// costs O((k+1)^2 N).  The weighted total sum_{i,g} h_i w_g (Du)_{i,g}
/// telescopes to zero on periodic meshes for any input.
struct UpwindDerivative {
  enum class Side { bias_left, bias_right };
  Side side = Side::bias_left;
  Boundary bc = Boundary::periodic;
  Eigen::MatrixXd own_block;       // coupling within the cell
  Eigen::MatrixXd neighbor_block;  // coupling to the upwind neighbor
  std::vector<double> h;

  int cells() const { return static_cast<int>(h.size()); }
  int nodes_per_cell() const { return static_cast<int>(own_block.rows()); }
  int size() const { return cells() * nodes_per_cell(); }

  /// Apply to one nodal vector or columnwise to a factor matrix.
  Eigen::VectorXd apply(const Eigen::VectorXd& u) const;
  Eigen::MatrixXd apply(const Eigen::MatrixXd& u) const;

  /// Assemble the full size() x size() matrix (small meshes only; intended
  /// for cross-checks).
  Eigen::MatrixXd to_dense() const;
};

struct UpwindOperatorPair {
  UpwindDerivative plus;   // traces from the left neighbor
  UpwindDerivative minus;  // traces from the right neighbor
};

UpwindOperatorPair build_upwind_pair(const Mesh1D& mesh, const NodalBasis& basis);

/// block(q, j) = L_j(xi_q): values of the nodal Lagrange polynomials of
/// `coarse` at the nodes of `fine`.  Applied cellwise it resamples a nodal
/// field onto the finer rule.  Error norms need this: a field's own Gauss
/// nodes are the roots of the leading per-cell error mode, so sampling only
/// there hides most of the error.
Eigen::MatrixXd resample_block(const GaussRule& coarse, const GaussRule& fine);

/// Cellwise application of `block` to the stacked per-cell rows of `u`
/// (u has cells * block.cols() rows; the result has cells * block.rows()).
Eigen::MatrixXd resample(const Eigen::MatrixXd& u, int cells, const Eigen::MatrixXd& block);

}  // namespace lomac
