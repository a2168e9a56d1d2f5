#include "run_config.hpp"

#include <bit>
#include <cmath>
#include <fstream>
#include <numbers>
#include <set>
#include <sstream>

#include <json.hpp>

#include "output.hpp"

namespace vibecho::cli {

namespace {

using nlohmann::json;

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys = {
      "units",         "engine",          "mass",           "omega",
      "force",         "omega0",          "t0",             "tau",
      "phi",           "phi1",            "phi2",           "grid_points",
      "momentum_extent", "dt",            "t_start",        "t_end",
      "record_stride", "kinetic",         "ground_freq_ratio", "excited_freq_ratio",
      "steps_per_dephasing", "taus"};
  return keys;
}

double number(const json& j, const std::string& key) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    // Non-finite values are written as strings by the report writer.
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  throw ConfigError("key '" + key + "' must be a number");
}

std::size_t count(const json& j, const std::string& key) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) {
    throw ConfigError("key '" + key + "' must be a non-negative integer");
  }
  const auto v = j.get<long long>();
  if (v < 0) throw ConfigError("key '" + key + "' must be a non-negative integer");
  return static_cast<std::size_t>(v);
}

std::string text(const json& j, const std::string& key) {
  if (!j.is_string()) throw ConfigError("key '" + key + "' must be a string");
  return j.get<std::string>();
}

void check(ve_status status) {
  if (status != VE_OK) throw ConfigError(ve_last_error());
}

}  // namespace

const char* units_name(ve_units units) { return units == VE_UNITS_SI ? "si" : "natural"; }

const char* engine_name(ve_engine engine) {
  return engine == VE_ENGINE_NUMERIC ? "numeric" : "analytic";
}

RawConfig parse_config_text(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("malformed JSON: ") + e.what());
  }
  if (!doc.is_object()) throw ConfigError("configuration must be a JSON object");

  RawConfig raw;
  std::optional<double> phi;
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys().contains(key)) throw ConfigError("unknown configuration key '" + key + "'");
    if (key == "units") raw.units = text(value, key);
    else if (key == "engine") raw.engine = text(value, key);
    else if (key == "mass") raw.mass = number(value, key);
    else if (key == "omega") raw.omega = number(value, key);
    else if (key == "force") raw.force = number(value, key);
    else if (key == "omega0") raw.omega0 = number(value, key);
    else if (key == "t0") raw.t0 = number(value, key);
    else if (key == "tau") raw.tau = number(value, key);
    else if (key == "phi") phi = number(value, key);
    else if (key == "phi1") raw.phi1 = number(value, key);
    else if (key == "phi2") raw.phi2 = number(value, key);
    else if (key == "grid_points") raw.grid_points = count(value, key);
    else if (key == "momentum_extent") raw.momentum_extent = number(value, key);
    else if (key == "dt") raw.dt = number(value, key);
    else if (key == "t_start") raw.t_start = number(value, key);
    else if (key == "t_end") raw.t_end = number(value, key);
    else if (key == "record_stride") raw.record_stride = count(value, key);
    else if (key == "kinetic") {
      if (!value.is_boolean()) throw ConfigError("key 'kinetic' must be a boolean");
      raw.kinetic = value.get<bool>();
    } else if (key == "ground_freq_ratio") raw.ground_freq_ratio = number(value, key);
    else if (key == "excited_freq_ratio") raw.excited_freq_ratio = number(value, key);
    else if (key == "steps_per_dephasing") raw.steps_per_dephasing = number(value, key);
    else if (key == "taus") {
      if (!value.is_array()) throw ConfigError("key 'taus' must be an array of numbers");
      std::vector<double> taus;
      for (const auto& v : value) taus.push_back(number(v, key));
      raw.taus = std::move(taus);
    }
  }
  if (phi) {
    if (!raw.phi1) raw.phi1 = phi;
    if (!raw.phi2) raw.phi2 = phi;
  }
  return raw;
}

RawConfig load_config_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw ConfigError("cannot read configuration file '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return parse_config_text(ss.str());
}

RunConfig resolve(const RawConfig& raw) {
  RunConfig cfg;

  const std::string units = raw.units.value_or("si");
  if (units != "si" && units != "natural") throw ConfigError("units must be 'si' or 'natural'");
  const std::string engine = raw.engine.value_or("analytic");
  if (engine == "analytic") cfg.engine = VE_ENGINE_ANALYTIC;
  else if (engine == "numeric") cfg.engine = VE_ENGINE_NUMERIC;
  else throw ConfigError("engine must be 'analytic' or 'numeric'");

  const ve_params typical = ve_params_typical_molecule();
  if (units == "si") {
    cfg.params = typical;
  } else {
    check(ve_params_to_natural(&typical, &cfg.params));
  }
  if (raw.mass) cfg.params.mass = *raw.mass;
  if (raw.omega) cfg.params.ground_freq = *raw.omega;
  if (raw.force) cfg.params.force = *raw.force;
  if (raw.omega0) cfg.params.gap = *raw.omega0;
  check(ve_params_validate(&cfg.params));

  ve_timescales ts{};
  check(ve_timescales_compute(&cfg.params, &ts));

  constexpr double kDefaultArea = std::numbers::pi / 3.0;
  cfg.schedule.area1 = raw.phi1.value_or(kDefaultArea);
  cfg.schedule.area2 = raw.phi2.value_or(kDefaultArea);
  if (raw.tau) {
    cfg.schedule.tau = *raw.tau;
  } else {
    if (!std::isfinite(ts.dephasing_time)) throw ConfigError("tau is required when force is zero");
    cfg.schedule.tau = 4.0 * ts.dephasing_time;
  }
  cfg.schedule.t0 = raw.t0.value_or(cfg.schedule.tau);
  check(ve_schedule_validate(&cfg.schedule));

  check(ve_numeric_defaults(&cfg.params, &cfg.schedule, &cfg.numeric));
  auto& n = cfg.numeric;
  if (raw.grid_points) {
    const std::size_t points = *raw.grid_points;
    if (points < 2 || !std::has_single_bit(points)) {
      throw ConfigError("grid_points must be a power of two >= 2");
    }
    n.grid_points = points;
  }
  if (raw.momentum_extent) n.momentum_extent = *raw.momentum_extent;
  if (raw.dt) n.dt = *raw.dt;
  if (raw.t_start) n.t_start = *raw.t_start;
  if (raw.t_end) n.t_end = *raw.t_end;
  if (raw.record_stride) n.record_stride = *raw.record_stride;
  if (raw.kinetic) n.kinetic = *raw.kinetic ? 1 : 0;
  if (raw.ground_freq_ratio) n.ground_freq_ratio = *raw.ground_freq_ratio;
  if (raw.excited_freq_ratio) n.excited_freq_ratio = *raw.excited_freq_ratio;
  if (raw.steps_per_dephasing) n.steps_per_dephasing = *raw.steps_per_dephasing;
  if (!(n.dt > 0.0) || !std::isfinite(n.dt)) throw ConfigError("dt must be positive");
  if (!(n.t_end > n.t_start)) throw ConfigError("t_end must exceed t_start");
  if (n.record_stride == 0) throw ConfigError("record_stride must be at least 1");
  if (!(n.momentum_extent >= 0.0)) throw ConfigError("momentum_extent must be non-negative");
  if (!(n.steps_per_dephasing > 0.0)) throw ConfigError("steps_per_dephasing must be positive");

  if (raw.taus) {
    cfg.taus = *raw.taus;
  } else if (std::isfinite(ts.decoherence_time)) {
    // Eight delays spanning xi from about 1 down to about e^-2.4.
    for (int k = 0; k < 8; ++k) cfg.taus.push_back(ts.decoherence_time * (0.25 + k * (1.0 / 7.0)));
  }
  for (double tau : cfg.taus) {
    if (!(tau > 0.0) || !std::isfinite(tau)) throw ConfigError("taus must be positive");
  }
  return cfg;
}

std::string effective_config_json(const RunConfig& c) {
  JsonObject o;
  o.add("units", units_name(c.params.units))
      .add("engine", engine_name(c.engine))
      .add("mass", c.params.mass)
      .add("omega", c.params.ground_freq)
      .add("force", c.params.force)
      .add("omega0", c.params.gap)
      .add("t0", c.schedule.t0)
      .add("tau", c.schedule.tau)
      .add("phi1", c.schedule.area1)
      .add("phi2", c.schedule.area2)
      .add("grid_points", c.numeric.grid_points)
      .add("momentum_extent", c.numeric.momentum_extent)
      .add("dt", c.numeric.dt)
      .add("t_start", c.numeric.t_start)
      .add("t_end", c.numeric.t_end)
      .add("record_stride", c.numeric.record_stride)
      .add("kinetic", c.numeric.kinetic != 0)
      .add("ground_freq_ratio", c.numeric.ground_freq_ratio)
      .add("excited_freq_ratio", c.numeric.excited_freq_ratio)
      .add("steps_per_dephasing", c.numeric.steps_per_dephasing)
      .add_array("taus", c.taus);
  return o.str();
}

}  // namespace vibecho::cli
