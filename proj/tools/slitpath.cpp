#include "slitpath/cli/commands.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

namespace {

struct RunFlags {
  std::string config;
  std::string out;
  std::uint64_t seed = 0;
  std::size_t threads = 0;
};

void add_run_flags(CLI::App* sub, RunFlags& flags) {
  sub->add_option("--config", flags.config, "Config file (JSON)")->required();
  sub->add_option("--out", flags.out, "Output directory, overrides output.directory");
  sub->add_option("--seed", flags.seed, "Path sampling seed, overrides paths.seed");
  sub->add_option("--threads", flags.threads, "Worker threads (results do not depend on it)");
}

slitpath::cli::CommandOptions to_options(const CLI::App* sub, const RunFlags& flags) {
  slitpath::cli::CommandOptions o;
  o.config_path = flags.config;
  if (sub->count("--out")) o.out_dir = flags.out;
  if (sub->count("--seed")) o.seed = flags.seed;
  if (sub->count("--threads")) o.threads = flags.threads;
  return o;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-slit path-integral simulator"};
  app.require_subcommand(1);

  RunFlags sim_flags, sweep_flags, paths_flags;
  auto* sim = app.add_subcommand("simulate", "Channel intensities for one configuration");
  add_run_flags(sim, sim_flags);
  auto* sweep = app.add_subcommand("sweep", "Visibility and onset metrics over sweep.d_values");
  add_run_flags(sweep, sweep_flags);
  auto* paths = app.add_subcommand("paths", "Sampled path bundles and crossing counts");
  add_run_flags(paths, paths_flags);

  double distance = 0.0, mass = 1.0, energy = 0.0;
  auto* unc = app.add_subcommand("uncertainty", "Packet uncertainties for a flight of length D");
  unc->add_option("-D,--D,--distance", distance, "Flight length in bohr")->required();
  unc->add_option("--mass", mass, "Particle mass in electron masses")->capture_default_str();
  unc->add_option("--kinetic-energy", energy, "Kinetic energy in hartree")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return slitpath::cli::exit_code::usage;
  }

  if (*sim) return slitpath::cli::cmd_simulate(to_options(sim, sim_flags), std::cout, std::cerr);
  if (*sweep) return slitpath::cli::cmd_sweep(to_options(sweep, sweep_flags), std::cout, std::cerr);
  if (*paths) return slitpath::cli::cmd_paths(to_options(paths, paths_flags), std::cout, std::cerr);
  return slitpath::cli::cmd_uncertainty(distance, mass, energy, std::cout, std::cerr);
}
