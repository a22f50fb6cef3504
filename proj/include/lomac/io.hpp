#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lomac/lowrank.hpp"
#include "lomac/mesh.hpp"
#include "lomac/vp_stepper.hpp"

namespace lomac {

/// I/O failure carrying the offending path.
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Format a double with 17 significant digits, enough for bit-exact
/// round-tripping through text.
std::string format_full(double x);

/// CSV with one header row and the columns
///   t, mass, mass_rel_dev, momentum, momentum_abs_dev, kinetic_energy,
///   field_energy, total_energy, energy_rel_dev, rank
/// all doubles written via format_full.
void write_diagnostics(const std::string& path, const std::vector<DiagnosticsRecord>& series);
std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path);

/// Factorized snapshot: versioned text header (mode tag, degree, both nodal
/// grids), then coefficients and the two factor matrices, optionally followed
/// by the dense nodal array for small grids.  Values round-trip bit-exactly.
struct SnapshotData {
  std::string mode;
  int degree = 0;
  NodalGrid grid1, grid2;
  LowRankFunction f;
  std::optional<Eigen::MatrixXd> dense;
};

void write_snapshot(const std::string& path, const LowRankFunction& f, const NodalGrid& grid1,
                    const NodalGrid& grid2, const std::string& mode, int degree,
                    bool include_dense = false);
SnapshotData read_snapshot(const std::string& path);

/// One refinement level of a convergence study.
struct ConvergenceRow {
  std::string mesh;  // e.g. "32x64"
  double l2 = 0.0;
  double linf = 0.0;
  double cpu_seconds = 0.0;
};

/// Observed orders log2(e_{i-1}/e_i); entry 0 is NaN (no coarser level).
std::vector<double> log2_orders(const std::vector<double>& errors);

/// CSV table (mesh, l2_error, l2_order, linf_error, linf_order, cpu_seconds);
/// requires at least two rows.
std::string format_convergence_table(const std::vector<ConvergenceRow>& rows);
void write_convergence_table(const std::string& path, const std::vector<ConvergenceRow>& rows);

}  // namespace lomac
