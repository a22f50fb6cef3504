#include "lomac/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace lomac {

namespace {

[[noreturn]] void io_fail(const std::string& path, const std::string& what) {
  throw IoError("io: " + what + " (" + path + ")");
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) io_fail(path, "cannot open for writing");
  return out;
}

std::ifstream open_in(const std::string& path) {
  std::ifstream in(path);
  if (!in) io_fail(path, "cannot open for reading");
  return in;
}

void write_vector(std::ofstream& out, const double* data, std::ptrdiff_t n) {
  for (std::ptrdiff_t i = 0; i < n; ++i) out << (i ? " " : "") << format_full(data[i]);
  out << "\n";
}

void read_doubles(std::istream& in, double* data, std::ptrdiff_t n, const std::string& path) {
  for (std::ptrdiff_t i = 0; i < n; ++i)
    if (!(in >> data[i])) io_fail(path, "truncated numeric block");
}

void write_grid(std::ofstream& out, const NodalGrid& g) {
  out << "grid " << g.cells << " " << g.nodes_per_cell << "\n";
  write_vector(out, g.points.data(), g.size());
  write_vector(out, g.weights.data(), g.size());
}

NodalGrid read_grid(std::istream& in, const std::string& path) {
  std::string tag;
  NodalGrid g;
  if (!(in >> tag >> g.cells >> g.nodes_per_cell) || tag != "grid" || g.cells < 1 ||
      g.nodes_per_cell < 1)
    io_fail(path, "malformed grid header");
  g.points.resize(static_cast<std::size_t>(g.cells) * g.nodes_per_cell);
  g.weights.resize(g.points.size());
  read_doubles(in, g.points.data(), g.size(), path);
  read_doubles(in, g.weights.data(), g.size(), path);
  return g;
}

constexpr int kSnapshotVersion = 1;

}  // namespace

std::string format_full(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

void write_diagnostics(const std::string& path, const std::vector<DiagnosticsRecord>& series) {
  if (series.empty()) io_fail(path, "refusing to write an empty diagnostics series");
  std::ofstream out = open_out(path);
  out << "t,mass,mass_rel_dev,momentum,momentum_abs_dev,kinetic_energy,field_energy,"
         "total_energy,energy_rel_dev,rank\n";
  for (const auto& r : series) {
    out << format_full(r.t) << ',' << format_full(r.mass) << ',' << format_full(r.mass_rel_dev)
        << ',' << format_full(r.momentum) << ',' << format_full(r.momentum_abs_dev) << ','
        << format_full(r.kinetic_energy) << ',' << format_full(r.field_energy) << ','
        << format_full(r.total_energy) << ',' << format_full(r.energy_rel_dev) << ',' << r.rank
        << "\n";
  }
  if (!out) io_fail(path, "write failed");
}

std::vector<DiagnosticsRecord> read_diagnostics(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string line;
  if (!std::getline(in, line)) io_fail(path, "missing header row");
  std::vector<DiagnosticsRecord> series;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    for (auto& c : line)
      if (c == ',') c = ' ';
    std::istringstream row(line);
    DiagnosticsRecord r;
    if (!(row >> r.t >> r.mass >> r.mass_rel_dev >> r.momentum >> r.momentum_abs_dev >>
          r.kinetic_energy >> r.field_energy >> r.total_energy >> r.energy_rel_dev >> r.rank))
      io_fail(path, "malformed data row");
    series.push_back(r);
  }
  return series;
}

void write_snapshot(const std::string& path, const LowRankFunction& f, const NodalGrid& grid1,
                    const NodalGrid& grid2, const std::string& mode, int degree,
                    bool include_dense) {
  if (f.rows() != grid1.size() || f.cols() != grid2.size())
    io_fail(path, "factor sizes do not match the grids");
  std::ofstream out = open_out(path);
  out << "lomac-snapshot " << kSnapshotVersion << "\n";
  out << "mode " << mode << "\n";
  out << "degree " << degree << "\n";
  write_grid(out, grid1);
  write_grid(out, grid2);
  out << "rank " << f.rank() << "\n";
  write_vector(out, f.coeff.data(), f.rank());
  for (int l = 0; l < f.rank(); ++l) write_vector(out, f.left.col(l).data(), f.rows());
  for (int l = 0; l < f.rank(); ++l) write_vector(out, f.right.col(l).data(), f.cols());
  if (include_dense) {
    const Eigen::MatrixXd dense = to_dense(f);
    out << "dense " << dense.rows() << " " << dense.cols() << "\n";
    for (Eigen::Index i = 0; i < dense.rows(); ++i) {
      for (Eigen::Index jj = 0; jj < dense.cols(); ++jj)
        out << (jj ? " " : "") << format_full(dense(i, jj));
      out << "\n";
    }
  }
  if (!out) io_fail(path, "write failed");
}

SnapshotData read_snapshot(const std::string& path) {
  std::ifstream in = open_in(path);
  std::string tag;
  int version = 0;
  if (!(in >> tag >> version) || tag != "lomac-snapshot") io_fail(path, "not a snapshot file");
  if (version != kSnapshotVersion)
    io_fail(path, "unsupported snapshot version " + std::to_string(version) + ", expected " +
                      std::to_string(kSnapshotVersion));

  SnapshotData s;
  if (!(in >> tag >> s.mode) || tag != "mode") io_fail(path, "missing mode line");
  if (!(in >> tag >> s.degree) || tag != "degree") io_fail(path, "missing degree line");
  s.grid1 = read_grid(in, path);
  s.grid2 = read_grid(in, path);

  int rank = 0;
  if (!(in >> tag >> rank) || tag != "rank" || rank < 0) io_fail(path, "malformed rank line");
  s.f.coeff.resize(rank);
  s.f.left.resize(s.grid1.size(), rank);
  s.f.right.resize(s.grid2.size(), rank);
  read_doubles(in, s.f.coeff.data(), rank, path);
  for (int l = 0; l < rank; ++l) read_doubles(in, s.f.left.col(l).data(), s.f.rows(), path);
  for (int l = 0; l < rank; ++l) read_doubles(in, s.f.right.col(l).data(), s.f.cols(), path);

  if (in >> tag) {
    Eigen::Index rows = 0, cols = 0;
    if (tag != "dense" || !(in >> rows >> cols) || rows != s.f.rows() || cols != s.f.cols())
      io_fail(path, "malformed dense block");
    Eigen::MatrixXd dense(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
      for (Eigen::Index jj = 0; jj < cols; ++jj)
        if (!(in >> dense(i, jj))) io_fail(path, "truncated dense block");
    s.dense = std::move(dense);
  }
  return s;
}

std::vector<double> log2_orders(const std::vector<double>& errors) {
  std::vector<double> orders(errors.size(), std::numeric_limits<double>::quiet_NaN());
  for (std::size_t i = 1; i < errors.size(); ++i)
    orders[i] = std::log2(errors[i - 1] / errors[i]);
  return orders;
}

std::string format_convergence_table(const std::vector<ConvergenceRow>& rows) {
  if (rows.size() < 2)
    throw IoError("io: a convergence table needs at least two refinement levels");
  std::vector<double> l2(rows.size()), linf(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    l2[i] = rows[i].l2;
    linf[i] = rows[i].linf;
  }
  const std::vector<double> ord2 = log2_orders(l2), ordinf = log2_orders(linf);

  std::ostringstream out;
  out << "mesh,l2_error,l2_order,linf_error,linf_order,cpu_seconds\n";
  char buf[64];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    auto order_str = [&](double o) -> std::string {
      if (std::isnan(o)) return "-";
      std::snprintf(buf, sizeof buf, "%.2f", o);
      return buf;
    };
    std::snprintf(buf, sizeof buf, "%.6e", rows[i].l2);
    out << rows[i].mesh << ',' << buf << ',' << order_str(ord2[i]) << ',';
    std::snprintf(buf, sizeof buf, "%.6e", rows[i].linf);
    out << buf << ',' << order_str(ordinf[i]) << ',';
    std::snprintf(buf, sizeof buf, "%.3f", rows[i].cpu_seconds);
    out << buf << "\n";
  }
  return out.str();
}

void write_convergence_table(const std::string& path, const std::vector<ConvergenceRow>& rows) {
  std::ofstream out = open_out(path);
  out << format_convergence_table(rows);
  if (!out) io_fail(path, "write failed");
}

}  // namespace lomac
