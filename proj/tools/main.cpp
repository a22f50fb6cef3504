#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "commands.hpp"
#include "lomac/config.hpp"
#include "lomac/io.hpp"
#include "lomac/vp_stepper.hpp"

int main(int argc, char** argv) {
  CLI::App app{"lomac: low-rank kinetic solver with macroscopic conservation"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  int levels = 3;
  bool postprocess = false;

  CLI::App* run = app.add_subcommand("run", "Integrate a 1D1V Vlasov-Poisson scenario");
  run->add_option("--config", config_path, "JSON config file")->required();
  run->add_option("--override", overrides, "key=value config overrides (dots nest)");

  CLI::App* conv = app.add_subcommand("convergence", "Refinement study on a doubling ladder");
  conv->add_option("--config", config_path, "JSON config file")->required();
  conv->add_option("--override", overrides, "key=value config overrides (dots nest)");
  conv->add_option("--levels", levels, "number of refinement levels (>= 2)");

  CLI::App* adv = app.add_subcommand("advect", "2D constant-coefficient advection mode");
  adv->add_option("--config", config_path, "JSON config file")->required();
  adv->add_option("--override", overrides, "key=value config overrides (dots nest)");
  adv->add_flag("--postprocess", postprocess, "apply the smoothness-increasing filter at t_end");

  CLI::App* verify =
      app.add_subcommand("verify", "zero-tolerance equivalence against the dense reference");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // bad usage is a configuration error
  }

  try {
    if (run->parsed()) return cmd_run(config_path, overrides);
    if (conv->parsed()) return cmd_convergence(config_path, overrides, levels);
    if (adv->parsed()) return cmd_advect(config_path, overrides, postprocess);
    if (verify->parsed()) return cmd_verify();
  } catch (const lomac::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const lomac::NumericalAbort& e) {
    std::cerr << "numerical abort: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
