#pragma once

#include <Eigen/Dense>
#include <functional>
#include <vector>

namespace lomac {

/// Rank-r separable representation  f = sum_l coeff[l] * left.col(l) (x) right.col(l).
/// Factor columns need not be orthonormal.  Rank zero (empty factors) is the
/// exact zero function.
struct LowRankFunction {
  Eigen::VectorXd coeff;  // r entries
  Eigen::MatrixXd left;   // m x r
  Eigen::MatrixXd right;  // n x r

  int rank() const { return static_cast<int>(coeff.size()); }
  int rows() const { return static_cast<int>(left.rows()); }
  int cols() const { return static_cast<int>(right.rows()); }

  static LowRankFunction zero(int m, int n);
};

/// Quadrature weights for the two directions plus an optional multiplicative
/// weight folded into the second direction (the w_M of the weighted norm).
/// All entries must be positive.
struct WeightPair {
  Eigen::VectorXd left;
  Eigen::VectorXd right;
  Eigen::VectorXd right_multiplier;  // empty means identically one
};

enum class TruncationCriterion { relative, absolute };

/// Build from explicit separable terms; every pair must share the common
/// lengths m and n.
LowRankFunction from_separable(const std::vector<double>& coeffs,
                               const std::vector<Eigen::VectorXd>& lefts,
                               const std::vector<Eigen::VectorXd>& rights);

/// Materialize the full m x n nodal array.  Guarded against accidental huge
/// allocations; intended for diagnostics, error norms and cross-checks.
Eigen::MatrixXd to_dense(const LowRankFunction& f, std::ptrdiff_t max_entries = 1 << 25);

/// Representation-level sum alpha*f + beta*g by column concatenation (rank
/// r_f + r_g, no arithmetic on the factors).
LowRankFunction concat(const LowRankFunction& f, const LowRankFunction& g, double alpha = 1.0,
                       double beta = 1.0);

/// Columnwise map applied to each factor side; an empty function leaves the
/// side untouched.  Maps must preserve the factor length.
using FactorMap = std::function<Eigen::MatrixXd(const Eigen::MatrixXd&)>;
LowRankFunction map_factors(const LowRankFunction& f, const FactorMap& left_map,
                            const FactorMap& right_map);

/// Weighted singular-value truncation.
///
/// Equivalent to: scale the dense array elementwise by
/// sqrt(w.left (x) w.right*right_multiplier), keep the leading singular
/// triplets, and undo the scaling -- so that
///   || f - result ||_w  <=  eps * || f ||_w
/// in the weighted Frobenius norm.  Computed factor-side via thin QR of the
/// scaled factor blocks and an SVD of the small core; the dense array is
/// never formed and the cost is O((m+n) r^2 + r^3).
///
/// `relative` keeps the smallest r' with tail(r') <= eps * total; `absolute`
/// compares the tail against eps directly.  Singular values below the
/// round-off floor of the largest one are treated as exact zeros.  The result
/// keeps at least one term unless the input is numerically zero.
LowRankFunction truncate_weighted(const LowRankFunction& f, double eps, const WeightPair& w,
                                  TruncationCriterion criterion = TruncationCriterion::relative);

}  // namespace lomac
