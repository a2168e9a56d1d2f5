#include "commands.hpp"

#include <cmath>
#include <memory>
#include <vector>

#include "output.hpp"

namespace vibecho::cli {

namespace {

void check(ve_status status) {
  if (status != VE_OK) throw LibraryError(status, ve_last_error());
}

struct TraceDeleter {
  void operator()(ve_trace* t) const { ve_trace_free(t); }
};
struct ScanDeleter {
  void operator()(ve_scan* s) const { ve_scan_free(s); }
};
using TraceHandle = std::unique_ptr<ve_trace, TraceDeleter>;
using ScanHandle = std::unique_ptr<ve_scan, ScanDeleter>;

void prepare(const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + out_dir.string() + "': " + ec.message());
}

std::string timescales_json(const ve_timescales& ts) {
  JsonObject o;
  o.add("momentum_width", ts.momentum_width)
      .add("dephasing_time", ts.dephasing_time)
      .add("decoherence_time", ts.decoherence_time)
      .add("ratio", ts.ratio)
      .add("dimensionless_force", ts.dimensionless_force)
      .add("suggested_tau_min", ts.suggested_tau_min)
      .add("suggested_tau_max", ts.suggested_tau_max);
  return o.str();
}

}  // namespace

int exit_code_for(ve_status status) {
  switch (status) {
    case VE_OK: return kExitOk;
    case VE_ERR_INVALID_ARGUMENT:
    case VE_ERR_CONFIG: return kExitConfig;
    default: return kExitNumerical;
  }
}

int cmd_run(const RunConfig& config, const std::filesystem::path& out_dir) {
  prepare(out_dir);
  ve_trace* raw = nullptr;
  check(ve_trace_run(&config.params, &config.schedule, config.engine, &config.numeric, &raw));
  TraceHandle trace(raw);
  write_atomic(out_dir / "trace.csv", trace_csv(trace.get()));
  write_atomic(out_dir / "effective_config.json", effective_config_json(config));
  return kExitOk;
}

int cmd_scan_tau(const RunConfig& config, const std::filesystem::path& out_dir) {
  if (config.taus.empty()) throw ConfigError("scan-tau needs a non-empty 'taus' list");
  prepare(out_dir);
  ve_scan* raw = nullptr;
  check(ve_scan_tau(&config.params, config.schedule.area1, config.schedule.area2, config.taus.data(),
                    config.taus.size(), config.engine, &config.numeric, &raw));
  ScanHandle scan(raw);

  std::string failures = "[";
  std::size_t failed = 0;
  for (std::size_t i = 0; i < ve_scan_size(scan.get()); ++i) {
    ve_scan_point p{};
    check(ve_scan_point_get(scan.get(), i, &p));
    if (p.ok) continue;
    if (failed++ > 0) failures += ",";
    JsonObject f;
    f.add("tau", p.tau).add("error", ve_scan_point_error(scan.get(), i));
    failures += f.str();
  }
  failures += "]";

  JsonObject report;
  ve_fit fit{};
  const ve_status fit_status = ve_scan_fit(scan.get(), &fit);
  if (fit_status == VE_OK) {
    report.add("exponent", fit.exponent)
        .add("T_fit", fit.decoherence_time)
        .add("residual", fit.residual)
        .add("points", fit.points);
  } else {
    const double nan = std::nan("");
    report.add("exponent", nan).add("T_fit", nan).add("residual", nan).add("points", std::size_t{0});
  }
  report.add("units", units_name(config.params.units))
      .add_raw("failures", failures)
      .add_raw("fit_error", fit_status == VE_OK ? "null" : json_string(ve_last_error()));

  write_atomic(out_dir / "scan.csv", scan_csv(scan.get()));
  write_atomic(out_dir / "fit.json", report.str());
  write_atomic(out_dir / "effective_config.json", effective_config_json(config));
  return kExitOk;
}

int cmd_compare(const RunConfig& config, const std::filesystem::path& out_dir) {
  prepare(out_dir);
  ve_report r{};
  check(ve_compare(&config.params, &config.schedule, &config.numeric, &r));
  JsonObject o;
  o.add("sup_error", r.sup_error)
      .add("sup_error_relative", r.sup_error_relative)
      .add("l2_error", r.l2_error)
      .add("echo_resolved", r.echo_resolved != 0)
      .add("peak_time_error", r.peak_time_error)
      .add("peak_magnitude_error", r.peak_magnitude_error)
      .add("omega_t_total", r.omega_t_total)
      .add("shift_over_width", r.shift_over_width)
      .add("in_linear_regime", r.in_linear_regime != 0)
      .add("time_step", r.time_step)
      .add("units", units_name(config.params.units));
  write_atomic(out_dir / "compare.json", o.str());
  write_atomic(out_dir / "effective_config.json", effective_config_json(config));
  return kExitOk;
}

std::string params_report(const RunConfig& config) {
  ve_timescales given{};
  check(ve_timescales_compute(&config.params, &given));
  ve_params natural{};
  check(ve_params_to_natural(&config.params, &natural));
  ve_timescales nat{};
  check(ve_timescales_compute(&natural, &nat));

  std::vector<std::string> warnings;
  if (!std::isfinite(given.dephasing_time)) {
    warnings.push_back("force is zero: no dephasing, the echo does not decay");
  }
  std::string warn = "[";
  for (std::size_t i = 0; i < warnings.size(); ++i) {
    if (i > 0) warn += ",";
    warn += json_string(warnings[i]);
  }
  warn += "]";

  JsonObject o;
  o.add("units", units_name(config.params.units))
      .add("f", given.dimensionless_force)
      .add("delta_p", given.momentum_width)
      .add("t_phi", given.dephasing_time)
      .add("T", given.decoherence_time)
      .add("T_over_t_phi", given.ratio);
  // Natural-unit input carries no physical scale, so no SI block is possible.
  o.add_raw("si", config.params.units == VE_UNITS_SI ? timescales_json(given) : "null")
      .add_raw("natural", timescales_json(nat))
      .add_raw("warnings", warn);
  return o.str();
}

}  // namespace vibecho::cli
