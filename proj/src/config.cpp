#include "lomac/config.hpp"

#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace lomac {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& msg) { throw ConfigError("config: " + msg); }

void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& item : j.items())
    if (!allowed.count(item.key())) fail("unknown key \"" + item.key() + "\" in " + where);
}

json apply_overrides(json j, const std::vector<std::string>& overrides) {
  for (const auto& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos || eq == 0) fail("override \"" + ov + "\" is not key=value");
    std::string path = "/" + ov.substr(0, eq);
    for (auto& c : path)
      if (c == '.') c = '/';
    json value;
    try {
      value = json::parse(ov.substr(eq + 1));
    } catch (const json::parse_error&) {
      value = ov.substr(eq + 1);  // bare strings need no quotes
    }
    j[json::json_pointer(path)] = value;
  }
  return j;
}

double get_number(const json& j, const std::string& key, double fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number()) fail("\"" + key + "\" must be a number");
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& key, int fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_number_integer()) fail("\"" + key + "\" must be an integer");
  return j[key].get<int>();
}

std::string get_string(const json& j, const std::string& key, const std::string& fallback) {
  if (!j.contains(key)) return fallback;
  if (!j[key].is_string()) fail("\"" + key + "\" must be a string");
  return j[key].get<std::string>();
}

}  // namespace

SolverConfig parse_config_text(const std::string& text, const std::vector<std::string>& overrides,
                               RunMode default_mode, std::ostream* log) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(std::string("malformed JSON: ") + e.what());
  }
  if (!j.is_object()) fail("top level must be a JSON object");
  j = apply_overrides(j, overrides);

  check_keys(j,
             {"mode",          "problem",        "degree",           "nx",
              "nv",            "n1",             "n2",               "eps",
              "criterion",     "cfl",            "dt",               "t_end",
              "output_interval", "snapshot_times", "perturb_fraction", "perturb_seed",
              "rank_cap",      "domain",         "weight",           "initial",
              "manufactured_source", "diagnostics_path", "snapshot_prefix"},
             "config");

  SolverConfig cfg;
  cfg.mode = default_mode;
  if (j.contains("mode")) {
    const std::string m = get_string(j, "mode", "");
    if (m == "vp1d1v")
      cfg.mode = RunMode::vp1d1v;
    else if (m == "advect2d")
      cfg.mode = RunMode::advect2d;
    else
      fail("\"mode\" must be \"vp1d1v\" or \"advect2d\", got \"" + m + "\"");
    if (cfg.mode != default_mode)
      fail("config mode \"" + m + "\" does not match the requested command");
  }

  cfg.problem = get_string(j, "problem",
                           cfg.mode == RunMode::advect2d ? "advect_sine" : "weak_landau_1d");
  if (cfg.mode == RunMode::vp1d1v) {
    const std::set<std::string> known{"weak_landau_1d", "strong_landau_1d", "bump_on_tail",
                                      "forced_vp", "custom"};
    if (!known.count(cfg.problem)) fail("unknown problem \"" + cfg.problem + "\"");
  } else if (cfg.problem != "advect_sine") {
    fail("advect2d supports only problem \"advect_sine\"");
  }

  cfg.degree = get_int(j, "degree", 1);
  if (cfg.degree < 0 || cfg.degree > 8) fail("\"degree\" must lie in [0, 8]");

  cfg.nx = get_int(j, cfg.mode == RunMode::advect2d ? "n1" : "nx",
                   cfg.mode == RunMode::advect2d ? 16 : 32);
  cfg.nv = get_int(j, cfg.mode == RunMode::advect2d ? "n2" : "nv",
                   cfg.mode == RunMode::advect2d ? cfg.nx : 64);
  if (cfg.mode == RunMode::advect2d) {
    if (j.contains("nx") || j.contains("nv")) fail("advect2d sizes are \"n1\" and \"n2\"");
  } else if (j.contains("n1") || j.contains("n2")) {
    fail("vp1d1v sizes are \"nx\" and \"nv\"");
  }
  if (cfg.nx < 3 || cfg.nv < 3) fail("cell counts must be at least 3");

  if (j.contains("eps")) {
    cfg.eps = get_number(j, "eps", 0.0);
    cfg.eps_given = true;
    if (cfg.eps < 0.0) fail("\"eps\" must be nonnegative");
  } else {
    cfg.eps = 1e-5;
    if (log) *log << "notice: \"eps\" not set, defaulting to 1e-5\n";
  }

  const std::string crit = get_string(j, "criterion", "relative");
  if (crit == "relative")
    cfg.criterion = TruncationCriterion::relative;
  else if (crit == "absolute")
    cfg.criterion = TruncationCriterion::absolute;
  else
    fail("\"criterion\" must be \"relative\" or \"absolute\"");

  cfg.cfl = get_number(j, "cfl", 0.0);
  if (cfg.cfl < 0.0) fail("\"cfl\" must be positive");
  cfg.dt = get_number(j, "dt", 0.0);
  if (cfg.dt < 0.0) fail("\"dt\" must be positive");
  cfg.t_end = get_number(j, "t_end", 10.0);
  if (!(cfg.t_end > 0.0)) fail("\"t_end\" must be positive");
  cfg.output_interval = get_number(j, "output_interval", 0.0);
  if (cfg.output_interval < 0.0) fail("\"output_interval\" must be nonnegative");

  if (j.contains("snapshot_times")) {
    if (!j["snapshot_times"].is_array()) fail("\"snapshot_times\" must be an array");
    for (const auto& t : j["snapshot_times"]) {
      if (!t.is_number()) fail("\"snapshot_times\" entries must be numbers");
      cfg.snapshot_times.push_back(t.get<double>());
    }
  }

  cfg.perturb_fraction = get_number(j, "perturb_fraction", 0.0);
  if (cfg.perturb_fraction < 0.0 || cfg.perturb_fraction >= 0.5)
    fail("\"perturb_fraction\" must lie in [0, 0.5)");
  if (j.contains("perturb_seed")) {
    if (!j["perturb_seed"].is_number_integer() || j["perturb_seed"].get<double>() < 0)
      fail("\"perturb_seed\" must be a nonnegative integer");
    cfg.perturb_seed = j["perturb_seed"].get<std::uint64_t>();
  }
  cfg.rank_cap = get_int(j, "rank_cap", 64);
  if (cfg.rank_cap < 1) fail("\"rank_cap\" must be positive");

  if (j.contains("domain")) {
    const json& d = j["domain"];
    check_keys(d, {"x_min", "x_max", "v_min", "v_max"}, "\"domain\"");
    cfg.has_domain = true;
    cfg.x_min = get_number(d, "x_min", 0.0);
    cfg.x_max = get_number(d, "x_max", 0.0);
    cfg.v_min = get_number(d, "v_min", 0.0);
    cfg.v_max = get_number(d, "v_max", 0.0);
    if (!(cfg.x_min < cfg.x_max) || !(cfg.v_min < cfg.v_max))
      fail("\"domain\" bounds must satisfy x_min < x_max and v_min < v_max");
  }

  if (j.contains("weight")) {
    const json& w = j["weight"];
    check_keys(w, {"type", "scale"}, "\"weight\"");
    if (get_string(w, "type", "gaussian") != "gaussian")
      fail("\"weight.type\" must be \"gaussian\"");
    cfg.has_weight = true;
    cfg.weight_scale = get_number(w, "scale", 2.0);
    if (!(cfg.weight_scale > 0.0)) fail("\"weight.scale\" must be positive");
  }

  if (j.contains("initial")) {
    if (!j["initial"].is_array() || j["initial"].empty())
      fail("\"initial\" must be a nonempty array of terms");
    for (const auto& t : j["initial"]) {
      check_keys(t, {"amplitude", "wavenumber", "v_center", "v_width"}, "\"initial\" term");
      CustomInitialTerm term;
      term.amplitude = get_number(t, "amplitude", 0.0);
      term.wavenumber = get_number(t, "wavenumber", 0.0);
      term.v_center = get_number(t, "v_center", 0.0);
      term.v_width = get_number(t, "v_width", 1.0);
      if (!(term.v_width > 0.0)) fail("\"initial\" term v_width must be positive");
      cfg.initial_terms.push_back(term);
    }
  }

  if (j.contains("manufactured_source")) {
    if (!j["manufactured_source"].is_boolean()) fail("\"manufactured_source\" must be a boolean");
    cfg.manufactured_source = j["manufactured_source"].get<bool>();
  } else {
    cfg.manufactured_source = cfg.problem == "forced_vp";
  }
  if (cfg.manufactured_source && cfg.problem != "forced_vp")
    fail("\"manufactured_source\" is only available for problem \"forced_vp\"");

  cfg.diagnostics_path = get_string(j, "diagnostics_path", "");
  cfg.snapshot_prefix = get_string(j, "snapshot_prefix", "");

  if (cfg.problem == "custom") {
    if (!cfg.has_domain) fail("problem \"custom\" requires \"domain\"");
    if (cfg.initial_terms.empty()) fail("problem \"custom\" requires \"initial\"");
  } else if (!cfg.initial_terms.empty()) {
    fail("\"initial\" is only available for problem \"custom\"");
  }

  return cfg;
}

SolverConfig parse_config_file(const std::string& path, const std::vector<std::string>& overrides,
                               RunMode default_mode, std::ostream* log) {
  std::ifstream in(path);
  if (!in) fail("cannot open \"" + path + "\"");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides, default_mode, log);
}

RunMode config_mode(const std::string& path, RunMode fallback) {
  std::ifstream in(path);
  if (!in) fail("cannot open \"" + path + "\"");
  json j = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded() || !j.is_object()) return fallback;
  if (j.contains("mode") && j["mode"].is_string())
    return j["mode"].get<std::string>() == "advect2d" ? RunMode::advect2d : RunMode::vp1d1v;
  if (j.contains("problem") && j["problem"].is_string() && j["problem"] == "advect_sine")
    return RunMode::advect2d;
  return fallback;
}

VlasovProblem make_problem(const SolverConfig& cfg) {
  if (cfg.mode != RunMode::vp1d1v) fail("make_problem needs a vp1d1v config");

  VlasovProblem p;
  if (cfg.problem == "custom") {
    p.name = "custom";
    for (const auto& term : cfg.initial_terms) {
      const double a = term.amplitude, kx = term.wavenumber;
      const double c = term.v_center, s = term.v_width;
      p.initial.push_back({[a, kx](double x, double) { return a * std::cos(kx * x); },
                           [c, s](double v) { return std::exp(-((v - c) / s) * ((v - c) / s)); }});
    }
  } else {
    p = vlasov_problem(cfg.problem);
    if (!cfg.manufactured_source) {
      p.kinetic_source.clear();
      p.macro_source = nullptr;
    }
  }
  if (cfg.has_domain) {
    p.x_min = cfg.x_min;
    p.x_max = cfg.x_max;
    p.v_min = cfg.v_min;
    p.v_max = cfg.v_max;
  }
  if (cfg.has_weight || cfg.problem == "custom") {
    const double s = cfg.weight_scale;
    p.weight = [s](double v) { return std::exp(-v * v / s); };
  }
  return p;
}

VpOptions make_vp_options(const SolverConfig& cfg) {
  VpOptions opts;
  opts.degree = cfg.degree;
  opts.nx = cfg.nx;
  opts.nv = cfg.nv;
  opts.eps = cfg.eps;
  opts.criterion = cfg.criterion;
  opts.cfl = cfg.cfl;
  opts.dt_override = cfg.dt;
  opts.rank_cap = cfg.rank_cap;
  opts.perturb_fraction = cfg.perturb_fraction;
  opts.perturb_seed = cfg.perturb_seed;
  return opts;
}

AdvectionOptions make_advection_options(const SolverConfig& cfg) {
  if (cfg.mode != RunMode::advect2d) fail("make_advection_options needs an advect2d config");
  AdvectionOptions opts;
  opts.degree = cfg.degree;
  opts.n1 = cfg.nx;
  opts.n2 = cfg.nv;
  opts.eps = cfg.eps;
  opts.criterion = cfg.criterion;
  opts.dt_override = cfg.dt;
  opts.rank_cap = cfg.rank_cap;
  return opts;
}

}  // namespace lomac
