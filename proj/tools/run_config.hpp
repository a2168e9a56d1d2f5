#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vibecho/vibecho.h"

namespace vibecho::cli {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything one command needs, resolved and validated.
///
/// The configuration file is a flat JSON object. Recognised keys:
///   units            "si" | "natural"          (default "si")
///   mass, omega, force, omega0                 molecular constants
///   t0, tau, phi, phi1, phi2                   pulse schedule (phi sets both)
///   engine           "analytic" | "numeric"    (default "analytic")
///   grid_points, momentum_extent, dt, t_start, t_end, record_stride,
///   kinetic, ground_freq_ratio, excited_freq_ratio, steps_per_dephasing
///   taus             array of delays for scan-tau
/// Unknown keys are rejected. Times are in the chosen unit system; in
/// natural units mass and omega must be 1 and force is dimensionless.
struct RunConfig {
  ve_params params{};
  ve_schedule schedule{};
  ve_engine engine = VE_ENGINE_ANALYTIC;
  ve_numeric_options numeric{};
  std::vector<double> taus;
};

/// Values as given, before defaults; command-line flags land here too.
struct RawConfig {
  std::optional<std::string> units;
  std::optional<std::string> engine;
  std::optional<double> mass, omega, force, omega0;
  std::optional<double> t0, tau, phi1, phi2;
  std::optional<std::size_t> grid_points, record_stride;
  std::optional<double> momentum_extent, dt, t_start, t_end;
  std::optional<bool> kinetic;
  std::optional<double> ground_freq_ratio, excited_freq_ratio, steps_per_dephasing;
  std::optional<std::vector<double>> taus;
};

RawConfig parse_config_text(const std::string& json_text);
RawConfig load_config_file(const std::string& path);

/// Fills defaults (typical molecule, pi/3 pulses, tau = 4 t_phi, t0 = tau,
/// numeric window from ve_numeric_defaults) and validates. Throws ConfigError.
RunConfig resolve(const RawConfig& raw);

/// Flat JSON object with every key resolved. Re-parsing it reproduces the run.
std::string effective_config_json(const RunConfig& config);

const char* units_name(ve_units units);
const char* engine_name(ve_engine engine);

}  // namespace vibecho::cli
