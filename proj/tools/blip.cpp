#include <iostream>
#include <map>

#include <CLI11.hpp>

#include "blip/cli/commands.hpp"

int main(int argc, char** argv) {
  using namespace blip::cli;

  CLI::App app{"Single-photon blip scattering at a mirror or dielectric surface"};
  app.require_subcommand(1);
  app.fallthrough();

  Options opts;
  std::string config;
  std::string out;
  app.add_option("--config", config, "Scenario configuration file");
  app.add_flag("--strict", opts.strict, "Exit with status 1 when a tolerance check fails");
  app.add_option("--out", out, "Output directory");
  const std::map<std::string, Format> formats{{"csv", Format::csv}, {"json", Format::json}};
  app.add_option("--format", opts.format, "Table format")->transform(CLI::CheckedTransformer(formats));

  auto* run = app.add_subcommand("run", "Run the configured scenario and write summary and time series");

  CheckArgs check_args;
  auto* check = app.add_subcommand("check", "Sweep the normal-incidence formula suite over n");
  check->add_option("--n-min", check_args.n_min, "Smallest refractive index");
  check->add_option("--n-max", check_args.n_max, "Largest refractive index");
  check->add_option("--steps", check_args.steps, "Number of sweep rows");

  DysonArgs dyson_args;
  auto* dyson = app.add_subcommand("dyson", "Partial sums of the interaction series against the closed form");
  dyson->add_option("--q", dyson_args.q, "Coupling ratio |Omega| / 2c");
  dyson->add_option("--terms", dyson_args.terms, "Highest order");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::config_error;
  }
  if (!config.empty()) opts.config = config;
  if (!out.empty()) opts.out = out;

  if (run->parsed()) return run_command(opts, std::cout, std::cerr);
  if (check->parsed()) return check_command(check_args, opts, std::cout, std::cerr);
  if (dyson->parsed()) return dyson_command(dyson_args, opts, std::cout, std::cerr);
  return exit_code::config_error;
}
