#include "lomac/advection.hpp"

#include <chrono>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "lomac/vp_stepper.hpp"  // NumericalAbort

namespace lomac {

namespace {

Eigen::VectorXd sample(const NodalGrid& g, double (*fn)(double)) {
  Eigen::VectorXd out(g.size());
  for (int i = 0; i < g.size(); ++i) out[i] = fn(g.points[i]);
  return out;
}

}  // namespace

AdvectionSolver::AdvectionSolver(const AdvectionOptions& opts)
    : opts_(opts),
      mesh1_(build_uniform(0.0, 2.0 * std::numbers::pi, opts.n1, Boundary::periodic)),
      mesh2_(build_uniform(0.0, 2.0 * std::numbers::pi, opts.n2, Boundary::periodic)),
      basis_(nodal_basis(gauss_rule(opts.degree))),
      grid1_(nodal_grid(mesh1_, basis_.rule)),
      grid2_(nodal_grid(mesh2_, basis_.rule)),
      d1_(build_upwind_pair(mesh1_, basis_)),
      d2_(build_upwind_pair(mesh2_, basis_)) {
  if (opts.n1 < 3 || opts.n2 < 3) throw std::invalid_argument("advection: need at least 3 cells");
  weights_.left = Eigen::Map<const Eigen::VectorXd>(grid1_.weights.data(), grid1_.size());
  weights_.right = Eigen::Map<const Eigen::VectorXd>(grid2_.weights.data(), grid2_.size());
}

double AdvectionSolver::default_dt() const {
  const double h = std::min(mesh1_.min_h(), mesh2_.min_h());
  return std::pow(h / 3.0, 1.5);
}

LowRankFunction AdvectionSolver::exact(double t) const {
  // sin(x1 + x2 - 2t) = sin(x1 - t) cos(x2 - t) + cos(x1 - t) sin(x2 - t)
  auto shift = [t](const NodalGrid& g, bool use_sin) {
    Eigen::VectorXd out(g.size());
    for (int i = 0; i < g.size(); ++i)
      out[i] = use_sin ? std::sin(g.points[i] - t) : std::cos(g.points[i] - t);
    return out;
  };
  return from_separable({1.0, 1.0}, {shift(grid1_, true), shift(grid1_, false)},
                        {shift(grid2_, false), shift(grid2_, true)});
}

LowRankFunction AdvectionSolver::rhs(const LowRankFunction& u) const {
  const auto dx1 = map_factors(u, [this](const Eigen::MatrixXd& m) { return d1_.plus.apply(m); },
                               FactorMap{});
  const auto dx2 = map_factors(u, FactorMap{},
                               [this](const Eigen::MatrixXd& m) { return d2_.plus.apply(m); });
  return concat(dx1, dx2, -1.0, -1.0);
}

LowRankFunction AdvectionSolver::truncate(const LowRankFunction& u) const {
  LowRankFunction r = truncate_weighted(u, opts_.eps, weights_, opts_.criterion);
  if (r.rank() > opts_.rank_cap)
    throw NumericalAbort("advection: rank exceeded cap " + std::to_string(opts_.rank_cap));
  if (!r.coeff.allFinite() || !r.left.allFinite() || !r.right.allFinite())
    throw NumericalAbort("advection: non-finite values");
  return r;
}

AdvectionResult AdvectionSolver::run(double t_end, bool postprocess) const {
  if (t_end <= 0.0) throw std::invalid_argument("advection: t_end must be positive");
  const auto tic = std::chrono::steady_clock::now();

  AdvectionResult res;
  const double dt_raw = opts_.dt_override > 0.0 ? opts_.dt_override : default_dt();
  res.steps = std::max(1, static_cast<int>(std::ceil(t_end / dt_raw - 1e-12)));
  res.dt = t_end / res.steps;

  LowRankFunction cur = truncate(
      from_separable({1.0, 1.0}, {sample(grid1_, [](double x) { return std::sin(x); }),
                                  sample(grid1_, [](double x) { return std::cos(x); })},
                     {sample(grid2_, [](double x) { return std::cos(x); }),
                      sample(grid2_, [](double x) { return std::sin(x); })}));
  res.rank_history.push_back(cur.rank());
  LowRankFunction prev1 = cur, prev2 = cur;

  for (int n = 0; n < res.steps; ++n) {
    LowRankFunction next;
    if (n < 2) {
      // Heun: two forward-Euler stages, then the midpoint average.
      const LowRankFunction s1 = truncate(concat(cur, rhs(cur), 1.0, res.dt));
      const LowRankFunction s2 = truncate(concat(s1, rhs(s1), 1.0, res.dt));
      next = truncate(concat(cur, s2, 0.5, 0.5));
    } else {
      const LowRankFunction hist = concat(prev2, cur, 0.25, 0.75);
      next = truncate(concat(hist, rhs(cur), 1.0, 1.5 * res.dt));
    }
    prev2 = prev1;
    prev1 = cur;
    cur = next;
    res.rank_history.push_back(cur.rank());
  }
  res.u = cur;

  // Error norms compare the cellwise polynomials against the exact solution
  // on an oversampled Gauss rule.  The solution's own nodes sit at the roots
  // of the leading error mode, so nodal-only sampling would underreport.
  const GaussRule fine = gauss_rule(opts_.degree + 4);
  const Eigen::MatrixXd block = resample_block(basis_.rule, fine);
  const NodalGrid fg1 = nodal_grid(mesh1_, fine);
  const NodalGrid fg2 = nodal_grid(mesh2_, fine);
  Eigen::MatrixXd exact_fine(fg1.size(), fg2.size());
  for (int i = 0; i < fg1.size(); ++i)
    for (int j = 0; j < fg2.size(); ++j)
      exact_fine(i, j) = std::sin(fg1.points[i] + fg2.points[j] - 2.0 * t_end);
  const Eigen::Map<const Eigen::VectorXd> fw1(fg1.weights.data(), fg1.size());
  const Eigen::Map<const Eigen::VectorXd> fw2(fg2.weights.data(), fg2.size());
  auto measure = [&](const LowRankFunction& f, double& l2, double& linf) {
    const Eigen::MatrixXd diff =
        resample(resample(to_dense(f), opts_.n1, block).transpose(), opts_.n2, block)
            .transpose() -
        exact_fine;
    l2 = std::sqrt((fw1.transpose() * diff.cwiseAbs2() * fw2).value());
    linf = diff.cwiseAbs().maxCoeff();
  };
  measure(cur, res.l2_error, res.linf_error);

  if (postprocess) {
    // The filtered field is smoother than the mesh polynomials, so evaluate
    // the convolution itself at the fine points, factor by factor.
    const SiacFilter filter(opts_.degree);
    Eigen::MatrixXd fleft(fg1.size(), cur.rank());
    Eigen::MatrixXd fright(fg2.size(), cur.rank());
    for (int l = 0; l < cur.rank(); ++l) {
      fleft.col(l) = filter.apply_at(cur.left.col(l), mesh1_, basis_, fg1.points);
      fright.col(l) = filter.apply_at(cur.right.col(l), mesh2_, basis_, fg2.points);
    }
    const Eigen::MatrixXd diff =
        fleft * cur.coeff.asDiagonal() * fright.transpose() - exact_fine;
    res.l2_post = std::sqrt((fw1.transpose() * diff.cwiseAbs2() * fw2).value());
    res.linf_post = diff.cwiseAbs().maxCoeff();
    res.postprocessed = true;
  }

  res.cpu_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - tic).count();
  return res;
}

}  // namespace lomac
