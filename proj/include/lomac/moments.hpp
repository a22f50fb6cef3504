#pragma once

#include <Eigen/Dense>

#include "lomac/lowrank.hpp"
#include "lomac/mesh.hpp"

namespace lomac {

/// Discrete inner product sum_i a_i b_i w_i.
double inner_v(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& w);

/// Velocity-space data for moment evaluation and the conservative projection.
///
/// The projection space is span{1, v, v^2 - c} under the weighted inner
/// product <a, b>_wM = sum a b wM w_v, with c chosen so <1, v^2 - c>_wM = 0.
/// moment_matrix(q, p) = <t_q, b_p>_wM for test functions t = (1, v, v^2/2)
/// and basis b = (1, v, v^2 - c); its inverse turns target moments into
/// projection coefficients.  On velocity grids that are not symmetric about
/// v = 0 the basis is only approximately orthogonal, so the full 3x3 solve
/// (rather than the diagonal normalization it reduces to on symmetric grids)
/// is what keeps the projection moment-exact.
struct VInnerSpace {
  Eigen::VectorXd v;        // nodal velocities
  Eigen::VectorXd wv;       // quadrature weights
  Eigen::VectorXd wM;       // multiplicative weight at the nodes
  double c = 0.0;
  Eigen::VectorXd basis1;   // constant one
  Eigen::VectorXd basis_v;  // v
  Eigen::VectorXd basis_q;  // v^2 - c
  Eigen::Vector3d norms_sq; // <b_p, b_p>_wM
  Eigen::Matrix3d moment_matrix;
  Eigen::Matrix3d moment_matrix_inv;

  int size() const { return static_cast<int>(v.size()); }
};

/// wM evaluated at the grid nodes; wM must be positive everywhere.
VInnerSpace build_v_space(const NodalGrid& vgrid, const Eigen::VectorXd& wM);

/// Charge density, current and kinetic-energy density as nodal x-vectors:
/// (rho, J, kappa) = sum_l C_l <U2_l, (1, v, v^2/2)>_v U1_l.
struct MacroMoments {
  Eigen::VectorXd rho;
  Eigen::VectorXd J;
  Eigen::VectorXd kappa;
};

MacroMoments moments(const LowRankFunction& f, const VInnerSpace& space);

/// Rank-3 function wM (x) span{1, v, v^2-c} whose discrete moments equal
/// `mom` exactly (up to round-off), on any velocity grid.
LowRankFunction build_f1(const MacroMoments& mom, const VInnerSpace& space);

/// Split f = f1 + f2 with f1 = build_f1(moments(f)) and f2 = f - f1 formed by
/// concatenation (rank r + 3).  moments(f2) vanishes to round-off.
struct ConservativeSplit {
  LowRankFunction f1;
  LowRankFunction f2;
};

ConservativeSplit conservative_decompose(const LowRankFunction& f, const VInnerSpace& space);

}  // namespace lomac
