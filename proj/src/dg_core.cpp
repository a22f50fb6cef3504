#include "lomac/dg_core.hpp"

#include <stdexcept>

namespace lomac {

NodalBasis nodal_basis(const GaussRule& rule) {
  const int n = static_cast<int>(rule.nodes.size());
  NodalBasis basis;
  basis.rule = rule;

  // Barycentric weights of the node set.
  Eigen::VectorXd bary(n);
  for (int i = 0; i < n; ++i) {
    double w = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != i) w *= rule.nodes[i] - rule.nodes[j];
    bary[i] = 1.0 / w;
  }

  basis.deriv.resize(n, n);
  for (int a = 0; a < n; ++a) {
    double diag = 0.0;
    for (int b = 0; b < n; ++b) {
      if (b == a) continue;
      const double d = bary[b] / bary[a] / (rule.nodes[a] - rule.nodes[b]);
      basis.deriv(a, b) = d;
      diag -= d;
    }
    basis.deriv(a, a) = diag;  // exact zero row sum
  }

  auto eval_at = [&](double x) {
    Eigen::VectorXd vals(n);
    for (int b = 0; b < n; ++b) {
      double v = 1.0;
      for (int j = 0; j < n; ++j)
        if (j != b) v *= (x - rule.nodes[j]) / (rule.nodes[b] - rule.nodes[j]);
      vals[b] = v;
    }
    return vals;
  };
  basis.left_face = eval_at(-0.5);
  basis.right_face = eval_at(0.5);
  return basis;
}

UpwindOperatorPair build_upwind_pair(const Mesh1D& mesh, const NodalBasis& basis) {
  const int n = basis.nodes();
  const auto& w = basis.rule.weights;
  const auto& ep = basis.right_face;  // traces at +1/2
  const auto& em = basis.left_face;   // traces at -1/2

  // V(g, g'') = w_{g''} L_g'(xi_{g''}) is the volume term of the weak form.
  Eigen::MatrixXd V(n, n);
  for (int g = 0; g < n; ++g)
    for (int gg = 0; gg < n; ++gg) V(g, gg) = w[gg] * basis.deriv(gg, g);

  UpwindOperatorPair pair;
  pair.plus.side = UpwindDerivative::Side::bias_left;
  pair.minus.side = UpwindDerivative::Side::bias_right;
  for (UpwindDerivative* op : {&pair.plus, &pair.minus}) {
    op->bc = mesh.bc;
    op->h = mesh.h;
    op->own_block.resize(n, n);
    op->neighbor_block.resize(n, n);
  }

  for (int g = 0; g < n; ++g)
    for (int gg = 0; gg < n; ++gg) {
      pair.plus.own_block(g, gg) = (-V(g, gg) + ep[g] * ep[gg]) / w[g];
      pair.plus.neighbor_block(g, gg) = -em[g] * ep[gg] / w[g];
      pair.minus.own_block(g, gg) = (-V(g, gg) - em[g] * em[gg]) / w[g];
      pair.minus.neighbor_block(g, gg) = ep[g] * em[gg] / w[g];
    }
  return pair;
}

Eigen::MatrixXd UpwindDerivative::apply(const Eigen::MatrixXd& u) const {
  const int n = nodes_per_cell();
  const int nc = cells();
  if (u.rows() != size()) throw std::invalid_argument("UpwindDerivative::apply: size mismatch");
  Eigen::MatrixXd out(u.rows(), u.cols());
  const bool left = side == Side::bias_left;
  for (int i = 0; i < nc; ++i) {
    out.middleRows(i * n, n).noalias() = own_block * u.middleRows(i * n, n);
    int adj = left ? i - 1 : i + 1;
    if (adj < 0 || adj >= nc) {
      if (bc == Boundary::periodic)
        adj = (adj + nc) % nc;
      else
        adj = -1;  // zero inflow
    }
    if (adj >= 0) out.middleRows(i * n, n).noalias() += neighbor_block * u.middleRows(adj * n, n);
    out.middleRows(i * n, n) /= h[i];
  }
  return out;
}

Eigen::VectorXd UpwindDerivative::apply(const Eigen::VectorXd& u) const {
  return Eigen::VectorXd(apply(Eigen::MatrixXd(u)));
}

Eigen::MatrixXd resample_block(const GaussRule& coarse, const GaussRule& fine) {
  const int n = static_cast<int>(coarse.nodes.size());
  const int m = static_cast<int>(fine.nodes.size());
  Eigen::MatrixXd block(m, n);
  for (int q = 0; q < m; ++q)
    for (int j = 0; j < n; ++j) {
      double v = 1.0;
      for (int jj = 0; jj < n; ++jj)
        if (jj != j) v *= (fine.nodes[q] - coarse.nodes[jj]) / (coarse.nodes[j] - coarse.nodes[jj]);
      block(q, j) = v;
    }
  return block;
}

Eigen::MatrixXd resample(const Eigen::MatrixXd& u, int cells, const Eigen::MatrixXd& block) {
  const int n = static_cast<int>(block.cols());
  const int m = static_cast<int>(block.rows());
  if (u.rows() != static_cast<Eigen::Index>(cells) * n)
    throw std::invalid_argument("resample: row count does not match cells * block.cols()");
  Eigen::MatrixXd out(static_cast<Eigen::Index>(cells) * m, u.cols());
  for (int i = 0; i < cells; ++i)
    out.middleRows(i * m, m).noalias() = block * u.middleRows(i * n, n);
  return out;
}

Eigen::MatrixXd UpwindDerivative::to_dense() const {
  const int n = nodes_per_cell();
  const int nc = cells();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(size(), size());
  const bool left = side == Side::bias_left;
  for (int i = 0; i < nc; ++i) {
    dense.block(i * n, i * n, n, n) = own_block / h[i];
    int adj = left ? i - 1 : i + 1;
    if (adj < 0 || adj >= nc) {
      if (bc == Boundary::periodic)
        adj = (adj + nc) % nc;
      else
        continue;
    }
    dense.block(i * n, adj * n, n, n) += neighbor_block / h[i];
  }
  return dense;
}

}  // namespace lomac
