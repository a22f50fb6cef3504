#include "lomac/moments.hpp"

#include <stdexcept>

namespace lomac {

double inner_v(const Eigen::VectorXd& a, const Eigen::VectorXd& b, const Eigen::VectorXd& w) {
  if (a.size() != b.size() || a.size() != w.size())
    throw std::invalid_argument("inner_v: length mismatch");
  return (a.array() * b.array() * w.array()).sum();
}

VInnerSpace build_v_space(const NodalGrid& vgrid, const Eigen::VectorXd& wM) {
  const int n = vgrid.size();
  if (wM.size() != n) throw std::invalid_argument("build_v_space: weight length mismatch");
  if ((wM.array() <= 0.0).any())
    throw std::invalid_argument("build_v_space: weight must be positive");
  VInnerSpace s;
  s.v = Eigen::Map<const Eigen::VectorXd>(vgrid.points.data(), n);
  s.wv = Eigen::Map<const Eigen::VectorXd>(vgrid.weights.data(), n);
  s.wM = wM;

  const Eigen::VectorXd wvm = s.wv.array() * s.wM.array();
  auto dot = [&](const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
    return (a.array() * b.array() * wvm.array()).sum();
  };

  s.basis1 = Eigen::VectorXd::Ones(n);
  s.basis_v = s.v;
  const Eigen::VectorXd v2 = s.v.array().square();
  s.c = dot(s.basis1, v2) / dot(s.basis1, s.basis1);
  s.basis_q = v2.array() - s.c;

  const Eigen::VectorXd b[3] = {s.basis1, s.basis_v, s.basis_q};
  const Eigen::VectorXd t[3] = {s.basis1, s.basis_v, 0.5 * v2};
  for (int p = 0; p < 3; ++p) s.norms_sq[p] = dot(b[p], b[p]);
  for (int q = 0; q < 3; ++q)
    for (int p = 0; p < 3; ++p) s.moment_matrix(q, p) = dot(t[q], b[p]);
  s.moment_matrix_inv = s.moment_matrix.inverse();
  return s;
}

MacroMoments moments(const LowRankFunction& f, const VInnerSpace& space) {
  if (f.cols() != space.size()) throw std::invalid_argument("moments: velocity grid mismatch");
  MacroMoments m;
  const Eigen::VectorXd t0 = space.wv;
  const Eigen::VectorXd t1 = space.wv.array() * space.v.array();
  const Eigen::VectorXd t2 = 0.5 * space.wv.array() * space.v.array().square();
  // <U2_l, t>_v for all l at once, then weight the left factors.
  m.rho = f.left * (f.coeff.asDiagonal() * (f.right.transpose() * t0));
  m.J = f.left * (f.coeff.asDiagonal() * (f.right.transpose() * t1));
  m.kappa = f.left * (f.coeff.asDiagonal() * (f.right.transpose() * t2));
  return m;
}

LowRankFunction build_f1(const MacroMoments& mom, const VInnerSpace& space) {
  const auto m = mom.rho.size();
  if (mom.J.size() != m || mom.kappa.size() != m)
    throw std::invalid_argument("build_f1: moment vectors differ in length");
  LowRankFunction f1;
  f1.coeff = Eigen::Vector3d::Ones();
  f1.left.resize(m, 3);
  f1.right.resize(space.size(), 3);
  const Eigen::Matrix3d& inv = space.moment_matrix_inv;
  for (int p = 0; p < 3; ++p)
    f1.left.col(p) = inv(p, 0) * mom.rho + inv(p, 1) * mom.J + inv(p, 2) * mom.kappa;
  f1.right.col(0) = space.wM.array() * space.basis1.array();
  f1.right.col(1) = space.wM.array() * space.basis_v.array();
  f1.right.col(2) = space.wM.array() * space.basis_q.array();
  return f1;
}

ConservativeSplit conservative_decompose(const LowRankFunction& f, const VInnerSpace& space) {
  ConservativeSplit split;
  split.f1 = build_f1(moments(f, space), space);
  split.f2 = concat(f, split.f1, 1.0, -1.0);
  return split;
}

}  // namespace lomac
