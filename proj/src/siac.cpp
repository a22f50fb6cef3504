#include "lomac/siac.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <stdexcept>

namespace lomac {

namespace {

// Central B-spline of order r (degree r-1, support [-r/2, r/2]).
double bspline(int r, double x) {
  if (r == 1) return (x >= -0.5 && x < 0.5) ? 1.0 : 0.0;
  return ((x + 0.5 * r) * bspline(r - 1, x + 0.5) + (0.5 * r - x) * bspline(r - 1, x - 0.5)) /
         (r - 1);
}

double binom(int n, int k) {
  double b = 1.0;
  for (int i = 0; i < k; ++i) b = b * (n - i) / (i + 1);
  return b;
}

// Moments of the central B-spline of order r via the convolution recursion.
std::vector<double> bspline_moments(int r, int max_m) {
  std::vector<double> mu(max_m + 1, 0.0);
  for (int j = 0; j <= max_m; j += 2) mu[j] = std::pow(0.5, j) / (j + 1);
  std::vector<double> box = mu;
  for (int step = 1; step < r; ++step) {
    std::vector<double> next(max_m + 1, 0.0);
    for (int j = 0; j <= max_m; ++j)
      for (int i = 0; i <= j; ++i) next[j] += binom(j, i) * mu[i] * box[j - i];
    mu = next;
  }
  return mu;
}

// Evaluate the Lagrange value of nodal cell data at reference coordinate xi.
double eval_cell(const Eigen::VectorXd& u, int cell, const NodalBasis& basis, double xi) {
  const int n = basis.nodes();
  double val = 0.0;
  for (int b = 0; b < n; ++b) {
    double lb = 1.0;
    for (int j = 0; j < n; ++j)
      if (j != b) lb *= (xi - basis.rule.nodes[j]) / (basis.rule.nodes[b] - basis.rule.nodes[j]);
    val += lb * u[cell * n + b];
  }
  return val;
}

}  // namespace

SiacFilter::SiacFilter(int k) : k_(k), order_(k + 1) {
  if (k < 1 || k > 6) throw std::invalid_argument("SiacFilter: degree must be in [1, 6]");
  const int terms = 2 * k + 1;
  const std::vector<double> mu = bspline_moments(order_, 2 * k);

  // Reproduction of x^m for m = 0..2k:  sum_g c_g int B(x-g) x^m dx = [m==0].
  Eigen::MatrixXd A(terms, terms);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(terms);
  b[0] = 1.0;
  for (int m = 0; m <= 2 * k; ++m)
    for (int g = -k; g <= k; ++g) {
      double moment = 0.0;
      for (int j = 0; j <= m; ++j) moment += binom(m, j) * std::pow(double(g), m - j) * mu[j];
      A(m, g + k) = moment;
    }
  coeffs_ = A.fullPivLu().solve(b);

  std::set<double> knots;
  for (int g = -k; g <= k; ++g)
    for (int j = 0; j <= order_; ++j) knots.insert(g - 0.5 * order_ + j);
  knots_.assign(knots.begin(), knots.end());
}

double SiacFilter::kernel(double z) const {
  double val = 0.0;
  for (int g = -k_; g <= k_; ++g) val += coeffs_[g + k_] * bspline(order_, z - g);
  return val;
}

double SiacFilter::convolve_at(const Eigen::VectorXd& u, const Mesh1D& mesh,
                               const NodalBasis& basis, double y) const {
  const int nc = mesh.cells();
  const double h = mesh.length() / nc;
  const double a = mesh.xmin(), len = mesh.length();
  const GaussRule quad = gauss_rule(basis.rule.k + 1);

  // Breakpoints in z: kernel knots plus the images of cell boundaries.
  std::vector<double> brk(knots_.begin(), knots_.end());
  const double z_of_a_edge = (y - a) / h;  // z where y - h z hits x = a (mod h)
  const double frac = z_of_a_edge - std::floor(z_of_a_edge);
  for (double z = std::floor(-support_radius()) + frac - 1.0; z < support_radius() + 1.0;
       z += 1.0)
    if (z > -support_radius() && z < support_radius()) brk.push_back(z);
  std::sort(brk.begin(), brk.end());

  double acc = 0.0;
  for (std::size_t s = 0; s + 1 < brk.size(); ++s) {
    const double lo = brk[s], hi = brk[s + 1];
    if (hi - lo < 1e-14) continue;
    const double mid = 0.5 * (lo + hi), half = hi - lo;
    for (std::size_t q = 0; q < quad.nodes.size(); ++q) {
      const double z = mid + half * quad.nodes[q];
      double x = y - h * z;
      x -= len * std::floor((x - a) / len);  // periodic wrap into [a, a+len)
      int cell = static_cast<int>(std::floor((x - a) / h));
      cell = std::min(std::max(cell, 0), nc - 1);
      const double xi = (x - mesh.centers[cell]) / h;
      acc += half * quad.weights[q] * kernel(z) * eval_cell(u, cell, basis, xi);
    }
  }
  return acc;
}

Eigen::VectorXd SiacFilter::apply(const Eigen::VectorXd& u, const Mesh1D& mesh,
                                  const NodalBasis& basis) const {
  if (mesh.bc != Boundary::periodic || !mesh.uniform())
    throw std::invalid_argument("SiacFilter: needs a uniform periodic mesh");
  const int n = basis.nodes();
  const int nc = mesh.cells();
  if (u.size() != n * nc) throw std::invalid_argument("SiacFilter: nodal vector length mismatch");
  const double h = mesh.length() / nc;

  Eigen::VectorXd out(u.size());
  for (int i = 0; i < nc; ++i)
    for (int g = 0; g < n; ++g)
      out[i * n + g] = convolve_at(u, mesh, basis, mesh.centers[i] + h * basis.rule.nodes[g]);
  return out;
}

Eigen::VectorXd SiacFilter::apply_at(const Eigen::VectorXd& u, const Mesh1D& mesh,
                                     const NodalBasis& basis,
                                     const std::vector<double>& points) const {
  if (mesh.bc != Boundary::periodic || !mesh.uniform())
    throw std::invalid_argument("SiacFilter: needs a uniform periodic mesh");
  if (u.size() != basis.nodes() * mesh.cells())
    throw std::invalid_argument("SiacFilter: nodal vector length mismatch");
  Eigen::VectorXd out(points.size());
  for (std::size_t p = 0; p < points.size(); ++p)
    out[p] = convolve_at(u, mesh, basis, points[p]);
  return out;
}

LowRankFunction SiacFilter::apply(const LowRankFunction& f, const Mesh1D& mesh1,
                                  const Mesh1D& mesh2, const NodalBasis& basis) const {
  LowRankFunction out = f;
  for (int l = 0; l < f.rank(); ++l) {
    out.left.col(l) = apply(Eigen::VectorXd(f.left.col(l)), mesh1, basis);
    out.right.col(l) = apply(Eigen::VectorXd(f.right.col(l)), mesh2, basis);
  }
  return out;
}

}  // namespace lomac
