#include "lomac/benchmarks.hpp"

#include <cmath>
#include <stdexcept>

namespace lomac {

namespace {

const double kSqrtPi = std::sqrt(M_PI);
const double kSqrt2Pi = std::sqrt(2.0 * M_PI);

VlasovProblem landau_problem(const std::string& name, double alpha) {
  const double kx = 0.5;
  VlasovProblem p;
  p.name = name;
  p.x_min = 0.0;
  p.x_max = 2.0 * M_PI / kx;  // 4*pi
  p.v_min = -6.0;
  p.v_max = 6.0;
  p.weight = [](double v) { return std::exp(-0.5 * v * v); };
  auto maxwellian = [](double v) { return std::exp(-0.5 * v * v) / kSqrt2Pi; };
  p.initial = {
      {[](double, double) { return 1.0; }, maxwellian},
      {[alpha, kx](double x, double) { return alpha * std::cos(kx * x); }, maxwellian},
  };
  return p;
}

}  // namespace

VlasovProblem weak_landau_problem() { return landau_problem("weak_landau_1d", 0.01); }

VlasovProblem strong_landau_problem() { return landau_problem("strong_landau_1d", 0.5); }

VlasovProblem bump_on_tail_problem() {
  const double alpha = 0.04, kx = 0.3;
  const double n_p = 9.0 / (10.0 * kSqrt2Pi);
  const double n_b = 2.0 / (10.0 * kSqrt2Pi);
  const double u = 4.5, vt = 0.5;
  VlasovProblem p;
  p.name = "bump_on_tail";
  p.x_min = 0.0;
  p.x_max = 2.0 * M_PI / kx;
  p.v_min = -13.0;
  p.v_max = 13.0;
  p.weight = [](double v) { return std::exp(-v * v / 7.0); };
  auto profile = [=](double v) {
    return n_p * std::exp(-0.5 * v * v) + n_b * std::exp(-(v - u) * (v - u) / (2.0 * vt));
  };
  p.initial = {
      {[](double, double) { return 1.0; }, profile},
      {[alpha, kx](double x, double) { return alpha * std::cos(kx * x); }, profile},
  };
  return p;
}

VlasovProblem forced_vp_problem() {
  VlasovProblem p;
  p.name = "forced_vp";
  p.x_min = -M_PI;
  p.x_max = M_PI;
  p.v_min = -4.0;
  p.v_max = 4.0;
  p.weight = [](double v) { return std::exp(-0.5 * v * v); };
  auto gauss = [](double v) {
    const double u = 4.0 * v - 1.0;
    return std::exp(-0.25 * u * u);
  };
  p.initial = {
      {[](double, double) { return 2.0; }, gauss},
      {[](double x, double) { return -std::cos(2.0 * x); }, gauss},
  };
  p.kinetic_source = {
      {[](double x, double t) { return std::sin(2.0 * x - 2.0 * M_PI * t); },
       [gauss](double v) { return ((4.0 * kSqrtPi + 2.0) * v - (2.0 * M_PI + kSqrtPi)) * gauss(v); }},
      {[](double x, double t) { return std::sin(4.0 * x - 4.0 * M_PI * t); },
       [gauss](double v) { return kSqrtPi * (0.25 - v) * gauss(v); }},
  };
  p.macro_source = [](double t, const Eigen::VectorXd& x, const Eigen::VectorXd& E) {
    MacroRates s;
    const Eigen::ArrayXd s2 = (2.0 * x.array() - 2.0 * M_PI * t).sin();
    const Eigen::ArrayXd s4 = (4.0 * x.array() - 4.0 * M_PI * t).sin();
    const Eigen::ArrayXd c2 = (2.0 * x.array() - 2.0 * M_PI * t).cos();
    s.rho = (kSqrtPi / 4.0) * (1.0 - 4.0 * M_PI) * s2;
    s.J = (kSqrtPi / 16.0) * (3.0 + 4.0 * kSqrtPi - 4.0 * M_PI) * s2 - (M_PI / 16.0) * s4;
    s.e = (kSqrtPi / 128.0) * (7.0 + 8.0 * kSqrtPi - 12.0 * M_PI) * s2 - (M_PI / 64.0) * s4 +
          (kSqrtPi / 8.0) * ((2.0 - (1.0 - 4.0 * M_PI) * c2) * E.array());
    return s;
  };
  p.exact_f = [](double x, double v, double t) {
    const double u = 4.0 * v - 1.0;
    return (2.0 - std::cos(2.0 * x - 2.0 * M_PI * t)) * std::exp(-0.25 * u * u);
  };
  p.exact_rho = [](double x, double t) {
    return 0.5 * kSqrtPi * (2.0 - std::cos(2.0 * x - 2.0 * M_PI * t));
  };
  return p;
}

VlasovProblem vlasov_problem(const std::string& name) {
  if (name == "weak_landau_1d") return weak_landau_problem();
  if (name == "strong_landau_1d") return strong_landau_problem();
  if (name == "bump_on_tail") return bump_on_tail_problem();
  if (name == "forced_vp") return forced_vp_problem();
  throw std::invalid_argument("unknown benchmark: " + name);
}

double default_epsilon(const std::string& name) {
  if (name == "strong_landau_1d" || name == "forced_vp") return 1e-3;
  if (name == "advect_sine") return 1e-4;
  return 1e-5;
}

}  // namespace lomac
