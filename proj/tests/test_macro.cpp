#include <cmath>
#include <numbers>

#include <Eigen/Dense>

#include "doctest.h"
#include "lomac/dg_core.hpp"
#include "lomac/macro.hpp"
#include "lomac/mesh.hpp"
#include "lomac/moments.hpp"

using namespace lomac;

namespace {

Eigen::VectorXd random_vector(int n, std::uint64_t seed) {
  SplitMix64 gen(seed);
  Eigen::VectorXd u(n);
  for (int i = 0; i < n; ++i) u[i] = 2.0 * gen.uniform() - 1.0;
  return u;
}

VInnerSpace make_space(double a, double b, int cells, int k) {
  const NodalGrid grid = nodal_grid(build_uniform(a, b, cells, Boundary::open), gauss_rule(k));
  Eigen::VectorXd wM(grid.size());
  for (int i = 0; i < grid.size(); ++i)
    wM[i] = std::exp(-0.5 * grid.points[i] * grid.points[i]);
  return build_v_space(grid, wM);
}

LowRankFunction random_lowrank(int m, int n, int r, std::uint64_t seed) {
  std::vector<double> c;
  std::vector<Eigen::VectorXd> ls, rs;
  for (int l = 0; l < r; ++l) {
    c.push_back(1.0 / (1 + l));
    ls.push_back(random_vector(m, seed + 2 * l));
    rs.push_back(random_vector(n, seed + 2 * l + 1));
  }
  return from_separable(c, ls, rs);
}

}  // namespace

TEST_CASE("flux splitting: plus and minus recombine to the unsplit moments") {
  const VInnerSpace space = make_space(-6.0, 6.0, 33, 2);  // v=0 inside a cell
  const LowRankFunction f = random_lowrank(8, space.size(), 4, 17);
  const KfvsFluxes flux = kfvs_fluxes(f, space);
  const Eigen::MatrixXd fd = to_dense(f);

  const Eigen::ArrayXd v = space.v.array(), wv = space.wv.array();
  const Eigen::VectorXd mass_ref = fd * (wv * v).matrix();
  const Eigen::VectorXd mom_ref = fd * (wv * v.square()).matrix();
  const Eigen::VectorXd en_ref = fd * (0.5 * wv * v.cube()).matrix();
  const double scale = fd.cwiseAbs().maxCoeff() * 10.0;

  CHECK((flux.mass_plus + flux.mass_minus - mass_ref).cwiseAbs().maxCoeff() < 1e-13 * scale);
  CHECK((flux.momentum_plus + flux.momentum_minus - mom_ref).cwiseAbs().maxCoeff() <
        1e-13 * scale);
  CHECK((flux.energy_plus + flux.energy_minus - en_ref).cwiseAbs().maxCoeff() < 1e-13 * scale);
}

TEST_CASE("flux splitting: one-sided grids and Maxwellian half-moments") {
  // Strictly positive velocities: the minus component must vanish identically.
  const VInnerSpace pos = make_space(0.5, 5.0, 12, 2);
  const LowRankFunction g = random_lowrank(6, pos.size(), 3, 29);
  const KfvsFluxes fp = kfvs_fluxes(g, pos);
  CHECK(fp.mass_minus.cwiseAbs().maxCoeff() == 0.0);
  CHECK(fp.momentum_minus.cwiseAbs().maxCoeff() == 0.0);
  CHECK(fp.energy_minus.cwiseAbs().maxCoeff() == 0.0);

  // Symmetric grid with v=0 on a cell boundary: half-moments of the unit
  // Maxwellian have closed forms (substitute u = v^2/2).  Degree 4 keeps the
  // one-sided integrands at round-off accuracy.
  const VInnerSpace space = make_space(-6.0, 6.0, 48, 4);
  const double norm = 1.0 / std::sqrt(2.0 * std::numbers::pi);
  const LowRankFunction maxwellian =
      from_separable({norm}, {Eigen::VectorXd::Ones(3)}, {space.wM});
  const KfvsFluxes fm = kfvs_fluxes(maxwellian, space);

  const double mass_half = norm * (1.0 - std::exp(-18.0));
  const double mom_half = 0.5 * std::erf(6.0 / std::sqrt(2.0)) - 6.0 * norm * std::exp(-18.0);
  const double en_half = norm * (1.0 - 19.0 * std::exp(-18.0));
  for (int i = 0; i < 3; ++i) {
    CHECK(fm.mass_plus[i] == doctest::Approx(mass_half).epsilon(1e-12));
    CHECK(fm.mass_minus[i] == doctest::Approx(-mass_half).epsilon(1e-12));
    CHECK(fm.momentum_plus[i] == doctest::Approx(mom_half).epsilon(1e-12));
    CHECK(fm.momentum_minus[i] == doctest::Approx(mom_half).epsilon(1e-12));
    CHECK(fm.energy_plus[i] == doctest::Approx(en_half).epsilon(1e-12));
    CHECK(fm.energy_minus[i] == doctest::Approx(-en_half).epsilon(1e-12));
  }
}

TEST_CASE("discrete totals: mass exact, momentum fed by rho E, energy by source") {
  const Mesh1D mesh =
      perturb_mesh(build_uniform(0.0, 2.0, 8, Boundary::periodic), 0.25, 7);
  const NodalBasis basis = nodal_basis(gauss_rule(2));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const UpwindOperatorPair ops = build_upwind_pair(mesh, basis);
  const Eigen::Map<const Eigen::VectorXd> w(grid.weights.data(), grid.size());
  const int n = grid.size();

  KfvsFluxes flux;
  flux.mass_plus = random_vector(n, 1);
  flux.mass_minus = random_vector(n, 2);
  flux.momentum_plus = random_vector(n, 3);
  flux.momentum_minus = random_vector(n, 4);
  flux.energy_plus = random_vector(n, 5);
  flux.energy_minus = random_vector(n, 6);
  const Eigen::VectorXd rho = (random_vector(n, 7).array() + 2.0).matrix();
  const Eigen::VectorXd E = random_vector(n, 8);

  const MacroSource source = [n](double t, const Eigen::VectorXd&) {
    MacroRates s;
    s.rho = Eigen::VectorXd::Zero(n);
    s.J = Eigen::VectorXd::Constant(n, 0.3 * t);
    s.e = Eigen::VectorXd::Constant(n, -0.1);
    return s;
  };
  const MacroRates rate = macro_rhs(flux, rho, E, ops, 2.0, source);

  const double mom_in = w.dot((rho.array() * E.array()).matrix()) + 0.6 * w.sum();
  const double en_in = -0.1 * w.sum();
  CHECK(std::abs(w.dot(rate.rho)) < 1e-12);
  CHECK(w.dot(rate.J) == doctest::Approx(mom_in).epsilon(1e-11));
  CHECK(w.dot(rate.e) == doctest::Approx(en_in).epsilon(1e-11));
}

TEST_CASE("cell totals telescope against the interface fluxes") {
  // With E=0 and no source, the cell total of each rate must equal minus the
  // difference of the numerical interface fluxes F(i+1/2) = right-trace of
  // the plus flux in cell i plus left-trace of the minus flux in cell i+1.
  const Mesh1D mesh =
      perturb_mesh(build_uniform(0.0, 1.0, 6, Boundary::periodic), 0.3, 19);
  const NodalBasis basis = nodal_basis(gauss_rule(2));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const UpwindOperatorPair ops = build_upwind_pair(mesh, basis);
  const int npc = basis.nodes(), nc = mesh.cells();

  KfvsFluxes flux;
  flux.mass_plus = random_vector(grid.size(), 11);
  flux.mass_minus = random_vector(grid.size(), 12);
  flux.momentum_plus = Eigen::VectorXd::Zero(grid.size());
  flux.momentum_minus = Eigen::VectorXd::Zero(grid.size());
  flux.energy_plus = Eigen::VectorXd::Zero(grid.size());
  flux.energy_minus = Eigen::VectorXd::Zero(grid.size());
  const Eigen::VectorXd zero = Eigen::VectorXd::Zero(grid.size());
  const MacroRates rate = macro_rhs(flux, zero, zero, ops, 0.0, {});

  std::vector<double> fhat(nc);  // interface flux at x_{i+1/2}
  for (int i = 0; i < nc; ++i) {
    const int r = (i + 1) % nc;
    fhat[i] = basis.right_face.dot(flux.mass_plus.segment(i * npc, npc)) +
              basis.left_face.dot(flux.mass_minus.segment(r * npc, npc));
  }
  for (int i = 0; i < nc; ++i) {
    double cell_total = 0.0;
    for (int g = 0; g < npc; ++g)
      cell_total += grid.weights[i * npc + g] * rate.rho[i * npc + g];
    const double expected = -(fhat[i] - fhat[(i + nc - 1) % nc]);
    CHECK(cell_total == doctest::Approx(expected).epsilon(1e-11));
  }
}

TEST_CASE("three-level update combines history and rate as advertised") {
  const Mesh1D mesh = build_uniform(0.0, 1.0, 4, Boundary::periodic);
  const NodalBasis basis = nodal_basis(gauss_rule(1));
  const NodalGrid grid = nodal_grid(mesh, basis.rule);
  const UpwindOperatorPair ops = build_upwind_pair(mesh, basis);
  const int n = grid.size();

  KfvsFluxes flux;
  flux.mass_plus = random_vector(n, 21);
  flux.mass_minus = random_vector(n, 22);
  flux.momentum_plus = random_vector(n, 23);
  flux.momentum_minus = random_vector(n, 24);
  flux.energy_plus = random_vector(n, 25);
  flux.energy_minus = random_vector(n, 26);
  MacroState un, um;
  un.rho = random_vector(n, 27);
  un.J = random_vector(n, 28);
  un.e = random_vector(n, 29);
  um.rho = random_vector(n, 30);
  um.J = random_vector(n, 31);
  um.e = random_vector(n, 32);
  const Eigen::VectorXd E = random_vector(n, 33);
  const double dt = 0.01;

  const MacroRates rate = macro_rhs(flux, un.rho, E, ops, 1.5, {});
  const MacroState next = macro_step(un, um, flux, E, dt, ops, 1.5, {});
  const Eigen::VectorXd want = 0.25 * um.J + 0.75 * un.J + 1.5 * dt * rate.J;
  CHECK((next.J - want).cwiseAbs().maxCoeff() < 1e-14);

  const Eigen::VectorXd kappa = kinetic_energy_from_total(next.e, E);
  CHECK((kappa - (next.e - 0.5 * E.cwiseProduct(E))).cwiseAbs().maxCoeff() < 1e-15);
}
