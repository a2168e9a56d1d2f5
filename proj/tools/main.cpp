#include <cstdio>
#include <exception>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "run_config.hpp"

namespace {

using namespace vibecho::cli;

template <typename T>
void override_with(std::optional<T>& target, const std::optional<T>& flag) {
  if (flag) target = flag;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Vibrational photon echo simulator"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", ve_version());

  std::string config_path;
  std::string out_dir = ".";
  RawConfig flags;
  std::optional<double> phi;

  app.add_option("--config", config_path, "Flat JSON configuration file");
  app.add_option("--out", out_dir, "Output directory")->capture_default_str();
  app.add_option("--engine", flags.engine, "analytic or numeric")
      ->check(CLI::IsMember({"analytic", "numeric"}));
  app.add_option("--units", flags.units, "Unit system of configuration values: si or natural")
      ->check(CLI::IsMember({"si", "natural"}));
  app.add_option("--mass", flags.mass, "Molecular mass");
  app.add_option("--omega", flags.omega, "Ground-state vibrational frequency");
  app.add_option("--force", flags.force, "Excited-state force");
  app.add_option("--t0", flags.t0, "Time of the second pulse");
  app.add_option("--tau", flags.tau, "Pulse delay");
  app.add_option("--phi", phi, "Area of both pulses");
  app.add_option("--phi1", flags.phi1, "Area of the first pulse");
  app.add_option("--phi2", flags.phi2, "Area of the second pulse");
  app.add_option("--grid-points", flags.grid_points, "Grid size (power of two)");
  app.add_option("--dt", flags.dt, "Numeric time step");

  auto* run = app.add_subcommand("run", "Write the dipole trace as trace.csv");
  auto* scan = app.add_subcommand("scan-tau", "Scan the delay, write scan.csv and fit.json");
  auto* compare = app.add_subcommand("compare", "Compare numeric and analytic traces, write compare.json");
  auto* params = app.add_subcommand("params", "Print the characteristic timescales as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    RawConfig raw = config_path.empty() ? RawConfig{} : load_config_file(config_path);
    if (phi) {
      if (!flags.phi1) flags.phi1 = phi;
      if (!flags.phi2) flags.phi2 = phi;
    }
    override_with(raw.units, flags.units);
    override_with(raw.engine, flags.engine);
    override_with(raw.mass, flags.mass);
    override_with(raw.omega, flags.omega);
    override_with(raw.force, flags.force);
    override_with(raw.t0, flags.t0);
    override_with(raw.tau, flags.tau);
    override_with(raw.phi1, flags.phi1);
    override_with(raw.phi2, flags.phi2);
    override_with(raw.grid_points, flags.grid_points);
    override_with(raw.dt, flags.dt);

    if (params->parsed()) {
      // Timescales only need valid molecular constants.
      if (!raw.tau) raw.tau = 1.0;
      raw.t0.reset();
      const RunConfig config = resolve(raw);
      std::cout << params_report(config) << '\n';
      return kExitOk;
    }
    const RunConfig config = resolve(raw);
    if (run->parsed()) return cmd_run(config, out_dir);
    if (scan->parsed()) return cmd_scan_tau(config, out_dir);
    if (compare->parsed()) return cmd_compare(config, out_dir);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const LibraryError& e) {
    std::cerr << "error (" << ve_status_name(e.status()) << "): " << e.what() << '\n';
    return exit_code_for(e.status());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitConfig;
}
