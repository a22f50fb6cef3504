#include <cmath>
#include <stdexcept>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "lomac/dg_core.hpp"
#include "lomac/mesh.hpp"
#include "lomac/poisson.hpp"

using namespace lomac;

namespace {

constexpr double pi = std::numbers::pi;

Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
  SplitMix64 gen(seed);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = 2.0 * gen.uniform() - 1.0;
  return u;
}

}  // namespace

TEST_CASE("polynomial charge yields the exact nodal primitive") {
  // rho = x - 1/2 on [0,1] has zero mean, so E = x^2/2 - x/2 + 1/12 and
  // phi = -(x^3/6 - x^2/4 + x/12), both with zero quadrature mean.  The nodal
  // values and the mean shifts are exact at k=1 (quadrature handles degree 3).
  const Mesh1D mesh = build_uniform(0.0, 1.0, 4, Boundary::periodic);
  const NodalBasis basis = nodal_basis(gauss_rule(1));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const FieldSolver solver(mesh, basis);

  Eigen::VectorXd rho(grid.size());
  for (int i = 0; i < grid.size(); ++i) rho[i] = grid.points[i] - 0.5;
  const FieldState field = solver.solve(rho);

  CHECK(std::abs(field.rho0) < 1e-15);
  for (int i = 0; i < grid.size(); ++i) {
    const double x = grid.points[i];
    CHECK(std::abs(field.E[i] - (0.5 * x * x - 0.5 * x + 1.0 / 12.0)) < 1e-14);
    CHECK(std::abs(field.phi[i] + (x * x * x / 6.0 - x * x / 4.0 + x / 12.0)) < 1e-14);
  }
}

TEST_CASE("constant charge produces a vanishing field") {
  const Mesh1D mesh = perturb_mesh(build_uniform(0.0, 3.0, 7, Boundary::periodic), 0.2, 11);
  const NodalBasis basis = nodal_basis(gauss_rule(2));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const FieldSolver solver(mesh, basis);
  const FieldState field = solver.solve(Eigen::VectorXd::Constant(grid.size(), 2.5));
  CHECK(field.rho0 == doctest::Approx(2.5).epsilon(1e-14));
  CHECK(field.E.cwiseAbs().maxCoeff() < 1e-13);
  CHECK(field.phi.cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("cosine perturbation: field converges at order k+1 or better") {
  for (int k : {1, 2}) {
    std::vector<double> errs;
    for (int n : {8, 16, 32}) {
      const Mesh1D mesh = build_uniform(0.0, 2.0 * pi, n, Boundary::periodic);
      const NodalBasis basis = nodal_basis(gauss_rule(k));
      const NodalGrid grid = nodal_grid(mesh, basis.rule);
      const FieldSolver solver(mesh, basis);
      Eigen::VectorXd rho(grid.size());
      for (int i = 0; i < grid.size(); ++i) rho[i] = 1.0 + 0.4 * std::cos(grid.points[i]);
      const FieldState field = solver.solve(rho);
      double err = 0.0;
      for (int i = 0; i < grid.size(); ++i)
        err = std::max(err, std::abs(field.E[i] - 0.4 * std::sin(grid.points[i])));
      errs.push_back(err);
    }
    for (std::size_t j = 1; j < errs.size(); ++j)
      CHECK(std::log2(errs[j - 1] / errs[j]) > k + 0.7);
  }
}

TEST_CASE("gauges and momentum cancellation hold on perturbed meshes") {
  for (int k : {1, 2, 3}) {
    const Mesh1D mesh =
        perturb_mesh(build_uniform(-1.0, 2.0, 9, Boundary::periodic), 0.25, 40 + k);
    const NodalBasis basis = nodal_basis(gauss_rule(k));
    const NodalGrid grid = nodal_grid(mesh, basis.rule);
    const FieldSolver solver(mesh, basis);
    const Eigen::VectorXd rho = (random_vector(grid.size(), 50 + k).array() + 1.5).matrix();
    const FieldState field = solver.solve(rho);
    const Eigen::VectorXd& w = solver.node_weights();

    CHECK(std::abs(w.dot(field.E)) < 1e-13);
    CHECK(std::abs(w.dot(field.phi)) < 1e-13);

    // sum_i w_i rho_i E_i = 0 to round-off: the discrete momentum input of the
    // electric force.  This is the property that fixes total momentum.
    const double scale =
        rho.cwiseAbs().maxCoeff() * std::max(field.E.cwiseAbs().maxCoeff(), 1e-30);
    CHECK(std::abs(w.dot((rho.array() * field.E.array()).matrix())) <
          1e-13 * scale * mesh.length());
  }
}

TEST_CASE("electric energy is the weighted square sum") {
  const Mesh1D mesh = build_uniform(0.0, 2.0 * pi, 32, Boundary::periodic);
  const NodalBasis basis = nodal_basis(gauss_rule(2));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const FieldSolver solver(mesh, basis);
  Eigen::VectorXd rho(grid.size());
  for (int i = 0; i < grid.size(); ++i) rho[i] = 1.0 + 0.5 * std::cos(grid.points[i]);
  const FieldState field = solver.solve(rho);

  double direct = 0.0;
  for (int i = 0; i < grid.size(); ++i)
    direct += 0.5 * grid.weights[i] * field.E[i] * field.E[i];
  CHECK(solver.electric_energy(field.E) == doctest::Approx(direct).epsilon(1e-14));
  // E = 0.5 sin x, so the energy is pi/8 up to discretization error.
  CHECK(solver.electric_energy(field.E) == doctest::Approx(pi / 8.0).epsilon(1e-6));
}

TEST_CASE("open meshes are rejected") {
  const Mesh1D mesh = build_uniform(0.0, 1.0, 4, Boundary::open);
  CHECK_THROWS_AS(FieldSolver(mesh, nodal_basis(gauss_rule(1))), std::invalid_argument);
}
