#pragma once

#include <cstdint>
#include <vector>

namespace lomac {

/// Gauss-Legendre rule on the reference cell [-1/2, 1/2].
/// k is the polynomial degree; the rule has k+1 nodes and integrates
/// polynomials of degree <= 2k+1 exactly.  Weights sum to 1.
struct GaussRule {
  int k = 0;
  std::vector<double> nodes;    // ascending, in (-1/2, 1/2)
  std::vector<double> weights;  // positive
};

/// Build the (k+1)-point rule for k in [0, 8].  Throws std::invalid_argument
/// outside that range.
GaussRule gauss_rule(int k);

enum class Boundary { periodic, open };

/// Partition of [a, b] into cells.  Cell i spans
/// [boundaries[i], boundaries[i+1]] with width h[i] and midpoint centers[i].
struct Mesh1D {
  std::vector<double> boundaries;  // strictly increasing, size n+1
  std::vector<double> h;           // size n
  std::vector<double> centers;     // size n
  Boundary bc = Boundary::periodic;

  int cells() const { return static_cast<int>(h.size()); }
  double xmin() const { return boundaries.front(); }
  double xmax() const { return boundaries.back(); }
  double length() const { return xmax() - xmin(); }
  double min_h() const;
  bool uniform(double rel_tol = 1e-12) const;
};

Mesh1D build_uniform(double a, double b, int n, Boundary bc);

/// Displace each interior cell boundary by an independent uniform draw in
/// [-fraction*h, fraction*h] of the original uniform spacing; endpoints stay
/// fixed.  fraction must lie in [0, 0.5).  Deterministic for a given seed
/// (splitmix64 generator).
Mesh1D perturb_mesh(const Mesh1D& mesh, double fraction, std::uint64_t seed);

/// Tensor-free list of global quadrature nodes: point (i, ig) is
/// centers[i] + h[i]*xi[ig], with global weight h[i]*w[ig].  Stored cell-major
/// so node index = i*(k+1) + ig.
struct NodalGrid {
  std::vector<double> points;
  std::vector<double> weights;  // sum equals the domain length
  int cells = 0;
  int nodes_per_cell = 1;

  int size() const { return static_cast<int>(points.size()); }
};

NodalGrid nodal_grid(const Mesh1D& mesh, const GaussRule& rule);

/// splitmix64: tiny, fully deterministic 64-bit generator used wherever
/// reproducible pseudo-random draws are needed.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
  /// Uniform draw in [0, 1) with 53 random bits.
  double uniform();
};

}  // namespace lomac
