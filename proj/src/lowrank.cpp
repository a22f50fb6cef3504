#include "lomac/lowrank.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace lomac {

LowRankFunction LowRankFunction::zero(int m, int n) {
  LowRankFunction f;
  f.coeff.resize(0);
  f.left.resize(m, 0);
  f.right.resize(n, 0);
  return f;
}

LowRankFunction from_separable(const std::vector<double>& coeffs,
                               const std::vector<Eigen::VectorXd>& lefts,
                               const std::vector<Eigen::VectorXd>& rights) {
  const std::size_t r = coeffs.size();
  if (r == 0 || lefts.size() != r || rights.size() != r)
    throw std::invalid_argument("from_separable: need matching non-empty term lists");
  const auto m = lefts[0].size();
  const auto n = rights[0].size();
  LowRankFunction f;
  f.coeff.resize(r);
  f.left.resize(m, r);
  f.right.resize(n, r);
  for (std::size_t l = 0; l < r; ++l) {
    if (lefts[l].size() != m || rights[l].size() != n)
      throw std::invalid_argument("from_separable: inconsistent factor lengths");
    f.coeff[l] = coeffs[l];
    f.left.col(l) = lefts[l];
    f.right.col(l) = rights[l];
  }
  return f;
}

Eigen::MatrixXd to_dense(const LowRankFunction& f, std::ptrdiff_t max_entries) {
  if (static_cast<std::ptrdiff_t>(f.rows()) * f.cols() > max_entries)
    throw std::length_error("to_dense: grid exceeds the dense-materialization guard");
  if (f.rank() == 0) return Eigen::MatrixXd::Zero(f.rows(), f.cols());
  return f.left * f.coeff.asDiagonal() * f.right.transpose();
}

LowRankFunction concat(const LowRankFunction& f, const LowRankFunction& g, double alpha,
                       double beta) {
  if (f.rows() != g.rows() || f.cols() != g.cols())
    throw std::invalid_argument("concat: grid shapes differ");
  LowRankFunction out;
  out.coeff.resize(f.rank() + g.rank());
  out.coeff << alpha * f.coeff, beta * g.coeff;
  out.left.resize(f.rows(), f.rank() + g.rank());
  out.left << f.left, g.left;
  out.right.resize(f.cols(), f.rank() + g.rank());
  out.right << f.right, g.right;
  return out;
}

LowRankFunction map_factors(const LowRankFunction& f, const FactorMap& left_map,
                            const FactorMap& right_map) {
  LowRankFunction out = f;
  if (left_map) {
    out.left = left_map(f.left);
    if (out.left.rows() != f.left.rows() || out.left.cols() != f.rank())
      throw std::invalid_argument("map_factors: left map changed the factor shape");
  }
  if (right_map) {
    out.right = right_map(f.right);
    if (out.right.rows() != f.right.rows() || out.right.cols() != f.rank())
      throw std::invalid_argument("map_factors: right map changed the factor shape");
  }
  return out;
}

namespace {

Eigen::VectorXd sqrt_weights(const Eigen::VectorXd& w, const Eigen::VectorXd& mult,
                             const char* side) {
  Eigen::VectorXd s = w;
  if (mult.size() > 0) {
    if (mult.size() != w.size())
      throw std::invalid_argument("truncate_weighted: multiplier length mismatch");
    s.array() *= mult.array();
  }
  for (Eigen::Index i = 0; i < s.size(); ++i) {
    if (!(s[i] > 0.0))
      throw std::invalid_argument(std::string("truncate_weighted: non-positive ") + side +
                                  " weight");
    s[i] = std::sqrt(s[i]);
  }
  return s;
}

}  // namespace

LowRankFunction truncate_weighted(const LowRankFunction& f, double eps, const WeightPair& w,
                                  TruncationCriterion criterion) {
  if (eps < 0.0) throw std::invalid_argument("truncate_weighted: negative tolerance");
  if (w.left.size() != f.rows() || w.right.size() != f.cols())
    throw std::invalid_argument("truncate_weighted: weight length mismatch");
  const Eigen::VectorXd sl = sqrt_weights(w.left, Eigen::VectorXd(), "left");
  const Eigen::VectorXd sr = sqrt_weights(w.right, w.right_multiplier, "right");
  if (f.rank() == 0) return f;

  // Thin QR of the scaled factor blocks, SVD of the small core.
  Eigen::MatrixXd ls = sl.asDiagonal() * f.left;
  Eigen::MatrixXd rs = sr.asDiagonal() * f.right;
  Eigen::HouseholderQR<Eigen::MatrixXd> qrl(ls);
  Eigen::HouseholderQR<Eigen::MatrixXd> qrr(rs);
  const int r = f.rank();
  const int pl = std::min<int>(f.rows(), r);
  const int pr = std::min<int>(f.cols(), r);
  Eigen::MatrixXd rl = qrl.matrixQR().topRows(pl).triangularView<Eigen::Upper>();
  Eigen::MatrixXd rr = qrr.matrixQR().topRows(pr).triangularView<Eigen::Upper>();
  Eigen::MatrixXd core = rl * f.coeff.asDiagonal() * rr.transpose();  // pl x pr
  Eigen::BDCSVD<Eigen::MatrixXd> svd(core, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Eigen::VectorXd& sv = svd.singularValues();

  // Values at the round-off floor of sigma_max count as zero, so eps = 0
  // keeps exactly the numerical rank.
  const int p = static_cast<int>(sv.size());
  const double floor = sv.size() > 0 ? sv[0] * 1e2 * std::numeric_limits<double>::epsilon() : 0.0;
  int nnz = 0;
  while (nnz < p && sv[nnz] > floor) ++nnz;
  double total_sq = 0.0;
  for (int i = 0; i < nnz; ++i) total_sq += sv[i] * sv[i];
  if (nnz == 0) return LowRankFunction::zero(f.rows(), f.cols());

  const double budget_sq = criterion == TruncationCriterion::relative
                               ? eps * eps * total_sq
                               : eps * eps;
  int keep = nnz;
  double tail_sq = 0.0;
  while (keep > 1 && tail_sq + sv[keep - 1] * sv[keep - 1] <= budget_sq) {
    tail_sq += sv[keep - 1] * sv[keep - 1];
    --keep;
  }

  Eigen::MatrixXd ql = qrl.householderQ() * Eigen::MatrixXd::Identity(f.rows(), pl);
  Eigen::MatrixXd qr = qrr.householderQ() * Eigen::MatrixXd::Identity(f.cols(), pr);
  LowRankFunction out;
  out.coeff = sv.head(keep);
  out.left = sl.cwiseInverse().asDiagonal() * (ql * svd.matrixU().leftCols(keep));
  out.right = sr.cwiseInverse().asDiagonal() * (qr * svd.matrixV().leftCols(keep));
  return out;
}

}  // namespace lomac
