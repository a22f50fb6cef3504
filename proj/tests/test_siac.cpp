#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "lomac/dg_core.hpp"
#include "lomac/lowrank.hpp"
#include "lomac/mesh.hpp"
#include "lomac/siac.hpp"

using namespace lomac;

namespace {

constexpr double pi = std::numbers::pi;

// Independent quadrature of int K(z) z^m dz: the kernel is piecewise
// polynomial with breakpoints on the half-integer lattice, so composite Gauss
// on half-unit subintervals with a degree-8 rule (exact through 17) settles
// integrands of degree 3k <= 15 exactly.
double kernel_moment(const SiacFilter& filter, int m) {
  const GaussRule rule = gauss_rule(8);
  const double radius = filter.support_radius();
  const int pieces = static_cast<int>(std::lround(4.0 * radius));
  double total = 0.0;
  for (int p = 0; p < pieces; ++p) {
    const double lo = -radius + 0.5 * p;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double z = lo + 0.5 * (rule.nodes[q] + 0.5);
      total += 0.5 * rule.weights[q] * filter.kernel(z) * std::pow(z, m);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("kernel: moment conditions, symmetry, compact support") {
  for (int k = 1; k <= 5; ++k) {
    CAPTURE(k);
    const SiacFilter filter(k);
    CHECK(filter.coeffs().size() == 2 * k + 1);
    for (int m = 0; m <= 2 * k; ++m) {
      const double want = m == 0 ? 1.0 : 0.0;
      // Wide kernels cancel z^m sums of magnitude ~1e4 in the oracle
      // quadrature, so round-off reaches a few 1e-12; a wrong kernel would
      // miss a moment by many orders more than 1e-11.
      CHECK(std::abs(kernel_moment(filter, m) - want) < 1e-11);
    }
    SplitMix64 gen(7 + k);
    for (int trial = 0; trial < 20; ++trial) {
      const double z = filter.support_radius() * (2.0 * gen.uniform() - 1.0);
      CHECK(filter.kernel(z) == doctest::Approx(filter.kernel(-z)).epsilon(1e-12));
    }
    CHECK(filter.kernel(filter.support_radius() + 1e-9) == 0.0);
    CHECK(filter.kernel(-filter.support_radius() - 0.5) == 0.0);
  }
  CHECK_THROWS_AS(SiacFilter(0), std::invalid_argument);
  CHECK_THROWS_AS(SiacFilter(7), std::invalid_argument);
}

TEST_CASE("filtering reproduces resolved polynomials away from the seam") {
  // Nodal data sampled from a degree-k polynomial is carried exactly by the
  // mesh, and the kernel reproduces it; only nodes whose support window wraps
  // around the periodic seam may differ.
  for (int k : {1, 2, 3}) {
    CAPTURE(k);
    const Mesh1D mesh = build_uniform(0.0, 3.0, 24, Boundary::periodic);
    const NodalBasis basis = nodal_basis(gauss_rule(k));
    const NodalGrid grid = nodal_grid(mesh, basis.rule);
    const SiacFilter filter(k);

    Eigen::VectorXd u(grid.size());
    auto poly = [k](double x) {
      double val = 1.0;
      for (int p = 1; p <= k; ++p) val += std::pow(x - 1.2, p) / (p + 1.0);
      return val;
    };
    for (int i = 0; i < grid.size(); ++i) u[i] = poly(grid.points[i]);
    const Eigen::VectorXd filtered = filter.apply(u, mesh, basis);

    const double margin = (filter.support_radius() + 0.5) * mesh.h[0];
    int checked = 0;
    for (int i = 0; i < grid.size(); ++i) {
      const double x = grid.points[i];
      if (x < mesh.xmin() + margin || x > mesh.xmax() - margin) continue;
      ++checked;
      CHECK(std::abs(filtered[i] - u[i]) < 1e-12);
    }
    CHECK(checked > grid.size() / 3);
  }
}

TEST_CASE("constants and quadrature totals are preserved exactly") {
  for (int k : {1, 2}) {
    CAPTURE(k);
    const Mesh1D mesh = build_uniform(-1.0, 1.0, 16, Boundary::periodic);
    const NodalBasis basis = nodal_basis(gauss_rule(k));
    const NodalGrid grid = nodal_grid(mesh, basis.rule);
    const SiacFilter filter(k);

    const Eigen::VectorXd c = Eigen::VectorXd::Constant(grid.size(), 0.7);
    CHECK((filter.apply(c, mesh, basis).array() - 0.7).abs().maxCoeff() < 1e-12);

    SplitMix64 gen(3 + k);
    Eigen::VectorXd u(grid.size());
    for (int i = 0; i < grid.size(); ++i) u[i] = 2.0 * gen.uniform() - 1.0;
    const Eigen::VectorXd fu = filter.apply(u, mesh, basis);
    const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(), grid.size());
    CHECK(std::abs(w.dot(fu) - w.dot(u)) < 1e-12 * u.cwiseAbs().maxCoeff());
  }
}

TEST_CASE("filtering smooth samples approximates the identity at high order") {
  // Exact sin samples are already nodally correct, so any filtered deviation
  // is pure kernel approximation error, which must shrink faster than the
  // base order k+1.  (The genuine superconvergence claim on evolved DG
  // solutions is covered by the advection tests.)
  const int k = 1;
  const NodalBasis basis = nodal_basis(gauss_rule(k));
  const SiacFilter filter(k);
  std::vector<double> errs;
  for (int n : {16, 32, 64}) {
    const Mesh1D mesh = build_uniform(0.0, 2.0 * pi, n, Boundary::periodic);
    const NodalGrid grid = nodal_grid(mesh, basis.rule);
    Eigen::VectorXd u(grid.size());
    for (int i = 0; i < grid.size(); ++i) u[i] = std::sin(grid.points[i]);
    const Eigen::VectorXd fu = filter.apply(u, mesh, basis);
    double e = 0.0;
    for (int i = 0; i < grid.size(); ++i)
      e += grid.weights[i] * std::pow(fu[i] - u[i], 2);
    errs.push_back(std::sqrt(e));
  }
  CHECK(errs[0] < 0.05);
  for (std::size_t j = 1; j < errs.size(); ++j)
    CHECK(std::log2(errs[j - 1] / errs[j]) > k + 1.5);
}

TEST_CASE("separable filtering equals directionwise dense filtering") {
  const int k = 1;
  const Mesh1D mesh1 = build_uniform(0.0, 2.0 * pi, 12, Boundary::periodic);
  const Mesh1D mesh2 = build_uniform(0.0, 2.0 * pi, 10, Boundary::periodic);
  const NodalBasis basis = nodal_basis(gauss_rule(k));
  const NodalGrid g1 = nodal_grid(mesh1, basis.rule);
  const NodalGrid g2 = nodal_grid(mesh2, basis.rule);
  const SiacFilter filter(k);

  std::vector<double> coeffs = {1.0, 0.4};
  std::vector<Eigen::VectorXd> lefts, rights;
  for (int l = 0; l < 2; ++l) {
    Eigen::VectorXd a(g1.size()), b(g2.size());
    for (int i = 0; i < g1.size(); ++i) a[i] = std::sin((l + 1) * g1.points[i]);
    for (int j = 0; j < g2.size(); ++j) b[j] = std::cos((l + 1) * g2.points[j]);
    lefts.push_back(a);
    rights.push_back(b);
  }
  const LowRankFunction f = from_separable(coeffs, lefts, rights);
  const LowRankFunction filtered = filter.apply(f, mesh1, mesh2, basis);

  Eigen::MatrixXd ref = to_dense(f);
  for (int j = 0; j < ref.cols(); ++j)
    ref.col(j) = filter.apply(Eigen::VectorXd(ref.col(j)), mesh1, basis);
  for (int i = 0; i < ref.rows(); ++i)
    ref.row(i) = filter.apply(Eigen::VectorXd(ref.row(i).transpose()), mesh2, basis).transpose();
  CHECK((to_dense(filtered) - ref).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("nonuniform meshes are rejected") {
  const Mesh1D mesh =
      perturb_mesh(build_uniform(0.0, 1.0, 12, Boundary::periodic), 0.2, 5);
  const NodalBasis basis = nodal_basis(gauss_rule(1));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const SiacFilter filter(1);
  const Eigen::VectorXd u = Eigen::VectorXd::Ones(grid.size());
  CHECK_THROWS_AS((void)filter.apply(u, mesh, basis), std::invalid_argument);
}
