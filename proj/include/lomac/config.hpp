#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "lomac/advection.hpp"
#include "lomac/benchmarks.hpp"
#include "lomac/lowrank.hpp"
#include "lomac/vp_stepper.hpp"

namespace lomac {

/// Invalid or inconsistent run configuration; the CLI maps this to exit
/// code 2.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class RunMode { vp1d1v, advect2d };

/// One separable initial-data term amplitude * cos(wavenumber*x)
/// * exp(-((v - v_center)/v_width)^2), enough to express every built-in
/// scenario and user-defined variations of them.
struct CustomInitialTerm {
  double amplitude = 0.0;
  double wavenumber = 0.0;
  double v_center = 0.0;
  double v_width = 1.0;
};

/// Parsed and validated run configuration.  Domain bounds, weight and initial
/// data default from the named benchmark; a "custom" problem must supply them
/// explicitly.
struct SolverConfig {
  RunMode mode = RunMode::vp1d1v;
  std::string problem = "weak_landau_1d";

  int degree = 1;
  int nx = 32;  // advect2d: cells along x1
  int nv = 64;  // advect2d: cells along x2

  double eps = 1e-5;
  bool eps_given = false;
  TruncationCriterion criterion = TruncationCriterion::relative;

  double cfl = 0.0;  // 0 selects the per-degree default
  double dt = 0.0;   // explicit step size, takes precedence over cfl
  double t_end = 10.0;
  double output_interval = 0.0;  // 0 records every step
  std::vector<double> snapshot_times;

  double perturb_fraction = 0.0;
  std::uint64_t perturb_seed = 7;
  int rank_cap = 64;

  bool has_domain = false;
  double x_min = 0.0, x_max = 1.0, v_min = -1.0, v_max = 1.0;
  bool has_weight = false;
  double weight_scale = 2.0;  // w_M(v) = exp(-v^2 / weight_scale)
  std::vector<CustomInitialTerm> initial_terms;
  bool manufactured_source = false;

  std::string diagnostics_path;  // empty: no CSV written
  std::string snapshot_prefix;   // empty: snapshots named after the problem
};

/// Parse a JSON config document.  Unknown keys are rejected by name; numeric
/// fields are range-checked.  `overrides` are "key=value" pairs (dots descend
/// into nested objects) applied before validation.  A missing `eps` falls
/// back to 1e-5 and logs a notice to `log` if given.
SolverConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides,
                               RunMode default_mode, std::ostream* log = nullptr);
SolverConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides,
                               RunMode default_mode, std::ostream* log = nullptr);

/// Peek at the "mode" key (or infer advect2d from problem "advect_sine")
/// without full validation; used by commands that accept either mode.
RunMode config_mode(const std::string& path, RunMode fallback);

/// Assemble the scenario the config describes: a registry benchmark with
/// optional domain/weight overrides, or a fully custom one.
VlasovProblem make_problem(const SolverConfig& cfg);

VpOptions make_vp_options(const SolverConfig& cfg);
AdvectionOptions make_advection_options(const SolverConfig& cfg);

}  // namespace lomac
