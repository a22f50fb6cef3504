#include "lomac/poisson.hpp"

#include <stdexcept>

namespace lomac {

FieldSolver::FieldSolver(const Mesh1D& mesh, const NodalBasis& basis) {
  if (mesh.bc != Boundary::periodic)
    throw std::invalid_argument("FieldSolver: only periodic meshes are supported");
  h_ = mesh.h;
  domain_length_ = mesh.length();
  const int n = basis.nodes();
  cell_row_ = Eigen::Map<const Eigen::VectorXd>(basis.rule.weights.data(), n);

  // partial_(g, j) = int_{-1/2}^{xi_g} L_j(s) ds, exact via a Gauss rule on
  // each subinterval (the integrand has degree k).  partial2_ repeats the
  // trick one level down: the double partial integral of L_j, whose inner
  // integrand A_j(s) = int_{-1/2}^{s} L_j has degree k+1, still well inside
  // the rule's exactness.  full2_ is A_j integrated over the whole cell.
  const GaussRule sub = gauss_rule(basis.rule.k + 1);
  const auto lagrange = [&](double s, int j) {
    double lj = 1.0;
    for (int jj = 0; jj < n; ++jj)
      if (jj != j) lj *= (s - basis.rule.nodes[jj]) / (basis.rule.nodes[j] - basis.rule.nodes[jj]);
    return lj;
  };
  const auto inner = [&](double s, int j) {
    const double len = s + 0.5, mid = 0.5 * (s - 0.5);
    double acc = 0.0;
    for (std::size_t q = 0; q < sub.nodes.size(); ++q)
      acc += len * sub.weights[q] * lagrange(mid + len * sub.nodes[q], j);
    return acc;
  };
  partial_.setZero(n, n);
  partial2_.setZero(n, n);
  full2_.setZero(n);
  nodes_half_.resize(n);
  for (int g = 0; g < n; ++g) {
    nodes_half_[g] = basis.rule.nodes[g] + 0.5;
    const double len = nodes_half_[g], mid = 0.5 * (basis.rule.nodes[g] - 0.5);
    for (std::size_t q = 0; q < sub.nodes.size(); ++q) {
      const double s = mid + len * sub.nodes[q];
      const double wq = len * sub.weights[q];
      for (int j = 0; j < n; ++j) {
        partial_(g, j) += wq * lagrange(s, j);
        partial2_(g, j) += wq * inner(s, j);
      }
    }
  }
  for (std::size_t q = 0; q < sub.nodes.size(); ++q)
    for (int j = 0; j < n; ++j) full2_[j] += sub.weights[q] * inner(sub.nodes[q], j);

  weights_.resize(n * mesh.cells());
  for (int i = 0; i < mesh.cells(); ++i)
    for (int g = 0; g < n; ++g) weights_[i * n + g] = h_[i] * cell_row_[g];
}

FieldState FieldSolver::solve(const Eigen::VectorXd& rho) const {
  const int n = static_cast<int>(cell_row_.size());
  const int nc = static_cast<int>(h_.size());
  if (rho.size() != n * nc)
    throw std::invalid_argument("FieldSolver: nodal vector length mismatch");
  FieldState field;
  field.rho0 = weights_.dot(rho) / domain_length_;
  const Eigen::VectorXd u = rho.array() - field.rho0;

  // One face-to-face sweep accumulates the exact single primitive P (for E)
  // and double primitive Q (for phi) of the cellwise charge polynomial.
  // Re-interpolating E before integrating again would lose its top degree;
  // integrating the double-partial matrices keeps phi exact as well.
  Eigen::VectorXd P(u.size()), Q(u.size()), xoff(u.size());
  double pf = 0.0, qf = 0.0, xl = 0.0;  // left-face values of P, Q, x - x_min
  for (int i = 0; i < nc; ++i) {
    const auto seg = u.segment(i * n, n);
    P.segment(i * n, n).array() = pf + h_[i] * (partial_ * seg).array();
    Q.segment(i * n, n).array() =
        qf + h_[i] * pf * nodes_half_.array() + h_[i] * h_[i] * (partial2_ * seg).array();
    xoff.segment(i * n, n).array() = xl + h_[i] * nodes_half_.array();
    qf += h_[i] * pf + h_[i] * h_[i] * full2_.dot(seg);
    pf += h_[i] * cell_row_.dot(seg);
    xl += h_[i];
  }
  // The quadrature mean of P equals its exact mean (degree k+1 <= 2k+1), so
  // E = P - shift integrates to zero exactly and phi is periodic.
  const double shift = weights_.dot(P) / domain_length_;
  field.E = P.array() - shift;
  Eigen::VectorXd phi = shift * xoff - Q;  // exact primitive of -E
  field.phi = phi.array() - weights_.dot(phi) / domain_length_;
  return field;
}

double FieldSolver::electric_energy(const Eigen::VectorXd& E) const {
  if (E.size() != weights_.size())
    throw std::invalid_argument("FieldSolver: nodal vector length mismatch");
  return 0.5 * weights_.dot(E.cwiseAbs2());
}

}  // namespace lomac
