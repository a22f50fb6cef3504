#pragma once

#include <Eigen/Dense>

#include "lomac/dg_core.hpp"
#include "lomac/lowrank.hpp"

namespace lomac {

/// Symmetric smoothness-increasing accuracy-conserving convolution kernel:
/// 2k+1 central B-splines of order k+1 with coefficients chosen to reproduce
/// polynomials through degree 2k, support width (3k+1) cells.  Applied to a
/// degree-k nodal solution at the final time it raises the convergence order
/// from k+1 to 2k+1.  Uniform periodic meshes only.
class SiacFilter {
 public:
  explicit SiacFilter(int k);

  /// Kernel value at z (mesh units); piecewise polynomial of degree k
  /// supported on |z| <= (3k+1)/2.
  double kernel(double z) const;

  const Eigen::VectorXd& coeffs() const { return coeffs_; }
  double support_radius() const { return 0.5 * (3 * k_ + 1); }

  /// Convolve the nodal piecewise polynomial with the scaled kernel and
  /// sample back at the nodes.  The quadrature splits every integration
  /// interval at kernel knots and cell boundaries, so the convolution
  /// integral is evaluated exactly.
  Eigen::VectorXd apply(const Eigen::VectorXd& u, const Mesh1D& mesh,
                        const NodalBasis& basis) const;

  /// Values of the convolved function at arbitrary points.  The filtered
  /// field is smoother than degree k, so error norms must evaluate the
  /// convolution directly instead of re-interpolating nodal samples of it.
  Eigen::VectorXd apply_at(const Eigen::VectorXd& u, const Mesh1D& mesh, const NodalBasis& basis,
                           const std::vector<double>& points) const;

  /// Filter each factor direction of a separable representation.
  LowRankFunction apply(const LowRankFunction& f, const Mesh1D& mesh1, const Mesh1D& mesh2,
                        const NodalBasis& basis) const;

 private:
  double convolve_at(const Eigen::VectorXd& u, const Mesh1D& mesh, const NodalBasis& basis,
                     double y) const;

  int k_;
  int order_;               // B-spline order k+1
  Eigen::VectorXd coeffs_;  // c_gamma, gamma = -k..k
  std::vector<double> knots_;  // breakpoints of the kernel, ascending
};

}  // namespace lomac
