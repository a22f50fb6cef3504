#include "lomac/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace lomac {

std::uint64_t SplitMix64::next() {
  state += 0x9e3779b97f4a7c15ull;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

double SplitMix64::uniform() {
  return static_cast<double>(next() >> 11) * 0x1.0p-53;
}

namespace {

// Legendre nodes on [-1, 1] by Newton iteration on P_n; machine-accurate for
// the small n used here.
void legendre_rule(int n, std::vector<double>& x, std::vector<double>& w) {
  x.assign(n, 0.0);
  w.assign(n, 0.0);
  for (int i = 0; i < n; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = t;
      if (n == 1) p1 = t;
      for (int j = 2; j <= n; ++j) {
        double p2 = ((2 * j - 1) * t * p1 - (j - 1) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      double pn = (n == 1) ? t : p1;
      double pm = (n == 1) ? 1.0 : p0;
      dp = n * (t * pn - pm) / (t * t - 1.0);
      double dt = pn / dp;
      t -= dt;
      if (std::abs(dt) < 1e-15) break;
    }
    x[n - 1 - i] = t;
    w[n - 1 - i] = 2.0 / ((1.0 - t * t) * dp * dp);
  }
  std::sort(x.begin(), x.end());
}

}  // namespace

GaussRule gauss_rule(int k) {
  if (k < 0 || k > 8) throw std::invalid_argument("gauss_rule: degree must be in [0, 8]");
  GaussRule rule;
  rule.k = k;
  if (k == 0) {
    rule.nodes = {0.0};
    rule.weights = {1.0};
    return rule;
  }
  std::vector<double> x, w;
  legendre_rule(k + 1, x, w);
  rule.nodes.resize(k + 1);
  rule.weights.resize(k + 1);
  for (int i = 0; i <= k; ++i) {
    rule.nodes[i] = 0.5 * x[i];
    rule.weights[i] = 0.5 * w[i];
  }
  return rule;
}

double Mesh1D::min_h() const {
  return *std::min_element(h.begin(), h.end());
}

bool Mesh1D::uniform(double rel_tol) const {
  const double href = length() / cells();
  for (double hi : h)
    if (std::abs(hi - href) > rel_tol * href) return false;
  return true;
}

Mesh1D build_uniform(double a, double b, int n, Boundary bc) {
  if (n < 1) throw std::invalid_argument("build_uniform: need at least one cell");
  if (!(a < b)) throw std::invalid_argument("build_uniform: empty interval");
  Mesh1D mesh;
  mesh.bc = bc;
  mesh.boundaries.resize(n + 1);
  const double h = (b - a) / n;
  for (int i = 0; i <= n; ++i) mesh.boundaries[i] = a + i * h;
  mesh.boundaries[n] = b;
  mesh.h.resize(n);
  mesh.centers.resize(n);
  for (int i = 0; i < n; ++i) {
    mesh.h[i] = mesh.boundaries[i + 1] - mesh.boundaries[i];
    mesh.centers[i] = 0.5 * (mesh.boundaries[i] + mesh.boundaries[i + 1]);
  }
  return mesh;
}

Mesh1D perturb_mesh(const Mesh1D& mesh, double fraction, std::uint64_t seed) {
  if (fraction < 0.0 || fraction >= 0.5)
    throw std::invalid_argument("perturb_mesh: fraction must lie in [0, 0.5)");
  Mesh1D out = mesh;
  const int n = mesh.cells();
  const double h = mesh.length() / n;
  SplitMix64 rng(seed);
  for (int i = 1; i < n; ++i) {
    const double shift = fraction * h * (2.0 * rng.uniform() - 1.0);
    out.boundaries[i] = mesh.boundaries[i] + shift;
  }
  for (int i = 0; i < n; ++i) {
    out.h[i] = out.boundaries[i + 1] - out.boundaries[i];
    out.centers[i] = 0.5 * (out.boundaries[i] + out.boundaries[i + 1]);
    if (out.h[i] <= 0.0) throw std::logic_error("perturb_mesh: produced a degenerate cell");
  }
  return out;
}

NodalGrid nodal_grid(const Mesh1D& mesh, const GaussRule& rule) {
  NodalGrid grid;
  grid.cells = mesh.cells();
  grid.nodes_per_cell = static_cast<int>(rule.nodes.size());
  grid.points.resize(grid.cells * grid.nodes_per_cell);
  grid.weights.resize(grid.points.size());
  for (int i = 0; i < grid.cells; ++i)
    for (int g = 0; g < grid.nodes_per_cell; ++g) {
      grid.points[i * grid.nodes_per_cell + g] = mesh.centers[i] + mesh.h[i] * rule.nodes[g];
      grid.weights[i * grid.nodes_per_cell + g] = mesh.h[i] * rule.weights[g];
    }
  return grid;
}

}  // namespace lomac
