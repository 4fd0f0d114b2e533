// cvdistill: sweep / point / env front end.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "cvdistill/cli.hpp"

int main(int argc, char** argv) {
  using namespace cvdistill::cli;

  CLI::App app{"Entanglement distillation by t*a + r*a^dag around a thermal channel"};
  app.require_subcommand(1);

  std::string config_path;
  std::string output;
  auto* sweep = app.add_subcommand("sweep", "Run an eta sweep described by a config file");
  sweep->add_option("config", config_path, "Run configuration (key = value)")->required();
  sweep->add_option("-o,--output", output, "CSV output path (overrides the config)");

  PointArgs point_args;
  double point_t = 0.0;
  auto* point = app.add_subcommand("point", "Evaluate every measure at one parameter point");
  point->add_option("--strategy", point_args.strategy,
                    "noop | subtract_before | subtract_after | coherent_before | coherent_after")
      ->required();
  point->add_option("--s", point_args.s, "Squeezing parameter")->required();
  point->add_option("--eta", point_args.eta, "Channel transmissivity")->required();
  point->add_option("--n_th", point_args.n_th, "Thermal photon number")->required();
  auto* t_opt = point->add_option("--t", point_t, "Fixed t (skips optimization)");
  point->add_option("--n_trunc", point_args.n_trunc, "Fock truncation")->capture_default_str();
  point->add_option("--objective", point_args.objective, "negativity | fidelity")
      ->capture_default_str();
  point->add_flag("--json", point_args.json, "Print JSON");

  double wavelength = 0.0;
  double temperature = 0.0;
  auto* env = app.add_subcommand("env", "Thermal occupation of a blackbody mode");
  env->add_option("--wavelength", wavelength, "Wavelength in meters")->required();
  env->add_option("--temperature", temperature, "Temperature in kelvin")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kConfigError;
  }

  if (sweep->parsed()) {
    std::optional<std::string> override_path;
    if (!output.empty()) override_path = output;
    return cmd_sweep(config_path, override_path, std::cout, std::cerr);
  }
  if (point->parsed()) {
    if (t_opt->count() > 0) point_args.t = point_t;
    return cmd_point(point_args, std::cout, std::cerr);
  }
  return cmd_env(wavelength, temperature, std::cout, std::cerr);
}
