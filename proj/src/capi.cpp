#include "vibecho/vibecho.h"

#include <cmath>
#include <exception>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "vibecho/analytic.hpp"
#include "vibecho/errors.hpp"
#include "vibecho/propagator.hpp"
#include "vibecho/scans.hpp"

struct ve_trace {
  vibecho::DipoleTrace trace;
};

struct ve_scan {
  vibecho::EchoScan scan;
};

namespace {

thread_local std::string g_last_error;

ve_status fail(ve_status status, const char* message) {
  g_last_error = message;
  return status;
}

template <typename Fn>
ve_status guarded(Fn&& fn) {
  try {
    fn();
    return VE_OK;
  } catch (const vibecho::ConfigError& e) {
    return fail(VE_ERR_CONFIG, e.what());
  } catch (const vibecho::GridError& e) {
    return fail(VE_ERR_GRID, e.what());
  } catch (const vibecho::NumericalError& e) {
    return fail(VE_ERR_NUMERICAL, e.what());
  } catch (const vibecho::DomainError& e) {
    return fail(VE_ERR_DOMAIN, e.what());
  } catch (const std::bad_alloc&) {
    return fail(VE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(VE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(VE_ERR_INTERNAL, "unknown error");
  }
}

vibecho::PhysicalParams to_cpp(const ve_params& p) {
  vibecho::PhysicalParams out;
  out.mass = p.mass;
  out.ground_freq = p.ground_freq;
  out.force = p.force;
  out.gap = p.gap;
  switch (p.units) {
    case VE_UNITS_SI: out.units = vibecho::UnitSystem::SI; break;
    case VE_UNITS_NATURAL: out.units = vibecho::UnitSystem::Natural; break;
    default: throw vibecho::ConfigError("unknown unit system");
  }
  return out;
}

ve_params to_c(const vibecho::PhysicalParams& p) {
  return {p.mass, p.ground_freq, p.force, p.gap,
          p.units == vibecho::UnitSystem::SI ? VE_UNITS_SI : VE_UNITS_NATURAL};
}

vibecho::PulseSchedule to_cpp(const ve_schedule& s) {
  vibecho::PulseSchedule out;
  out.t0 = s.t0;
  out.tau = s.tau;
  out.area1 = s.area1;
  out.area2 = s.area2;
  return out;
}

vibecho::PotentialSpec potentials_of(const ve_numeric_options& o) {
  vibecho::PotentialSpec spec;
  spec.ground_freq_ratio = o.ground_freq_ratio;
  spec.excited_freq_ratio = o.excited_freq_ratio;
  return spec;
}

ve_numeric_options options_from(const vibecho::PropagationConfig& c, double steps_per_dephasing) {
  ve_numeric_options o{};
  o.grid_points = c.grid.size();
  o.momentum_extent = c.grid.momentum_extent();
  o.dt = c.dt;
  o.t_start = c.t_start;
  o.t_end = c.t_end;
  o.record_stride = c.record_stride;
  o.kinetic = c.kinetic ? 1 : 0;
  o.ground_freq_ratio = 1.0;
  o.excited_freq_ratio = 0.0;
  o.steps_per_dephasing = steps_per_dephasing;
  return o;
}

constexpr double kDefaultStepsPerDephasing = 100.0;

vibecho::PropagationConfig config_of(const vibecho::PhysicalParams& params,
                                     const vibecho::PulseSchedule& schedule,
                                     const ve_numeric_options& o) {
  vibecho::PropagationConfig c;
  if (o.momentum_extent > 0.0) {
    c.grid = vibecho::Grid::with_momentum_extent(o.grid_points, o.momentum_extent);
  } else {
    const double spd = o.steps_per_dephasing > 0.0 ? o.steps_per_dephasing : kDefaultStepsPerDephasing;
    c.grid = vibecho::default_propagation_config(params, schedule, o.grid_points, spd).grid;
  }
  c.dt = o.dt;
  c.t_start = o.t_start;
  c.t_end = o.t_end;
  c.record_stride = o.record_stride;
  c.kinetic = o.kinetic != 0;
  return c;
}

struct Resolved {
  vibecho::PhysicalParams params;
  vibecho::PulseSchedule schedule;
  vibecho::PropagationConfig config;
  vibecho::PotentialSpec potentials;
};

Resolved resolve(const ve_params* params, const ve_schedule* schedule,
                 const ve_numeric_options* options) {
  Resolved r;
  r.params = to_cpp(*params);
  r.params.validate();
  r.schedule = to_cpp(*schedule);
  r.schedule.validate();
  if (options == nullptr) {
    r.config = vibecho::default_propagation_config(r.params, r.schedule);
  } else {
    r.config = config_of(r.params, r.schedule, *options);
    r.potentials = potentials_of(*options);
  }
  return r;
}

std::vector<double> time_base(const vibecho::PropagationConfig& c) {
  if (!(c.dt > 0.0) || !(c.t_end > c.t_start) || c.record_stride == 0) {
    throw vibecho::ConfigError("invalid time base");
  }
  const auto steps = static_cast<std::size_t>(std::llround((c.t_end - c.t_start) / c.dt));
  std::vector<double> times;
  for (std::size_t k = 0; k <= steps; ++k) {
    if (k % c.record_stride == 0 || k == steps) times.push_back(c.t_start + static_cast<double>(k) * c.dt);
  }
  return times;
}

}  // namespace

extern "C" {

const char* ve_version(void) { return "0.1.0"; }

const char* ve_last_error(void) { return g_last_error.c_str(); }

const char* ve_status_name(ve_status status) {
  switch (status) {
    case VE_OK: return "ok";
    case VE_ERR_INVALID_ARGUMENT: return "invalid argument";
    case VE_ERR_CONFIG: return "configuration error";
    case VE_ERR_NUMERICAL: return "numerical failure";
    case VE_ERR_GRID: return "grid error";
    case VE_ERR_DOMAIN: return "domain error";
    case VE_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

ve_params ve_params_typical_molecule(void) { return to_c(vibecho::PhysicalParams::typical_molecule()); }

ve_status ve_params_validate(const ve_params* params) {
  if (params == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null params");
  return guarded([&] { to_cpp(*params).validate(); });
}

ve_status ve_params_to_natural(const ve_params* params, ve_params* out) {
  if (params == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = to_c(vibecho::to_natural(to_cpp(*params))); });
}

ve_status ve_timescales_compute(const ve_params* params, ve_timescales* out) {
  if (params == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto t = vibecho::analytic::timescales(to_cpp(*params));
    *out = {t.momentum_width,      t.dephasing_time,    t.decoherence_time, t.ratio,
            t.dimensionless_force, t.suggested_tau_min, t.suggested_tau_max};
  });
}

ve_status ve_decoherence_factor(const ve_params* params, double tau, double* out) {
  if (params == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = vibecho::analytic::decoherence_factor(to_cpp(*params), tau); });
}

ve_status ve_position_shift(const ve_params* params, double tau, double* out) {
  if (params == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] { *out = vibecho::analytic::position_shift(to_cpp(*params), tau); });
}

ve_status ve_schedule_validate(const ve_schedule* schedule) {
  if (schedule == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null schedule");
  return guarded([&] { to_cpp(*schedule).validate(); });
}

ve_status ve_numeric_defaults(const ve_params* params, const ve_schedule* schedule,
                              ve_numeric_options* out) {
  if (params == nullptr || schedule == nullptr || out == nullptr) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const auto c = vibecho::default_propagation_config(to_cpp(*params), to_cpp(*schedule));
    *out = options_from(c, kDefaultStepsPerDephasing);
  });
}

ve_status ve_trace_run(const ve_params* params, const ve_schedule* schedule, ve_engine engine,
                       const ve_numeric_options* options, ve_trace** out) {
  if (params == nullptr || schedule == nullptr || out == nullptr) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    const Resolved r = resolve(params, schedule, options);
    auto handle = std::make_unique<ve_trace>();
    if (engine == VE_ENGINE_ANALYTIC) {
      const vibecho::analytic::EchoModel model(r.params, r.schedule);
      handle->trace = model.trace(time_base(r.config), true);
    } else if (engine == VE_ENGINE_NUMERIC) {
      handle->trace = vibecho::simulate_trace(r.params, r.schedule, r.potentials, r.config);
    } else {
      throw vibecho::ConfigError("unknown engine");
    }
    *out = handle.release();
  });
}

ve_status ve_trace_run_echo(const ve_params* params, const ve_schedule* schedule, ve_engine engine,
                            const ve_numeric_options* options, ve_trace** out) {
  if (params == nullptr || schedule == nullptr || out == nullptr) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    const Resolved r = resolve(params, schedule, options);
    auto handle = std::make_unique<ve_trace>();
    if (engine == VE_ENGINE_ANALYTIC) {
      const vibecho::analytic::EchoModel model(r.params, r.schedule);
      auto& trace = handle->trace;
      trace.units = r.params.units;
      trace.frame_note = std::string(vibecho::kRotatingFrameNote) + "; echo term only";
      for (double t : time_base(r.config)) {
        const auto pops = model.populations(t);
        const std::complex<double> d =
            t < r.schedule.t0 ? std::complex<double>{} : model.echo_with_decoherence(t);
        trace.samples.push_back({t, d, pops.ground, pops.excited});
      }
    } else if (engine == VE_ENGINE_NUMERIC) {
      handle->trace = vibecho::simulate_echo_trace(r.params, r.schedule, r.potentials, r.config);
    } else {
      throw vibecho::ConfigError("unknown engine");
    }
    *out = handle.release();
  });
}

size_t ve_trace_size(const ve_trace* trace) { return trace == nullptr ? 0 : trace->trace.samples.size(); }

ve_status ve_trace_sample(const ve_trace* trace, size_t index, ve_sample* out) {
  if (trace == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= trace->trace.samples.size()) return fail(VE_ERR_INVALID_ARGUMENT, "sample index out of range");
  const auto& s = trace->trace.samples[index];
  *out = {s.time, s.dipole.real(), s.dipole.imag(), s.ground_pop, s.excited_pop};
  return VE_OK;
}

const char* ve_trace_frame_note(const ve_trace* trace) {
  return trace == nullptr ? "" : trace->trace.frame_note.c_str();
}

void ve_trace_free(ve_trace* trace) { delete trace; }

ve_status ve_time_step_change(const ve_params* params, const ve_schedule* schedule,
                              const ve_numeric_options* options, double* out) {
  if (params == nullptr || schedule == nullptr || out == nullptr) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const Resolved r = resolve(params, schedule, options);
    *out = vibecho::time_step_change(r.params, r.schedule, r.potentials, r.config);
  });
}

ve_status ve_scan_tau(const ve_params* params, double area1, double area2, const double* taus,
                      size_t count, ve_engine engine, const ve_numeric_options* options,
                      ve_scan** out) {
  if (params == nullptr || out == nullptr || (taus == nullptr && count > 0)) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  *out = nullptr;
  return guarded([&] {
    vibecho::ScanOptions so;
    if (engine == VE_ENGINE_ANALYTIC) {
      so.engine = vibecho::Engine::Analytic;
    } else if (engine == VE_ENGINE_NUMERIC) {
      so.engine = vibecho::Engine::Numeric;
    } else {
      throw vibecho::ConfigError("unknown engine");
    }
    if (options != nullptr) {
      so.potentials = potentials_of(*options);
      if (options->grid_points != 0) so.grid_points = options->grid_points;
      if (options->steps_per_dephasing > 0.0) so.steps_per_dephasing = options->steps_per_dephasing;
      so.kinetic = options->kinetic != 0;
    }
    auto handle = std::make_unique<ve_scan>();
    handle->scan = vibecho::tau_scan(to_cpp(*params), area1, area2,
                                     std::span<const double>(taus, count), so);
    *out = handle.release();
  });
}

size_t ve_scan_size(const ve_scan* scan) { return scan == nullptr ? 0 : scan->scan.points.size(); }

ve_status ve_scan_point_get(const ve_scan* scan, size_t index, ve_scan_point* out) {
  if (scan == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  if (index >= scan->scan.points.size()) return fail(VE_ERR_INVALID_ARGUMENT, "point index out of range");
  const auto& p = scan->scan.points[index];
  *out = {p.tau, p.peak, p.peak_time, p.xi, p.xi_analytic, p.overlap_warning ? 1 : 0, p.ok ? 1 : 0};
  return VE_OK;
}

const char* ve_scan_point_error(const ve_scan* scan, size_t index) {
  if (scan == nullptr || index >= scan->scan.points.size()) return "";
  return scan->scan.points[index].error.c_str();
}

ve_status ve_scan_fit(const ve_scan* scan, ve_fit* out) {
  if (scan == nullptr || out == nullptr) return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  return guarded([&] {
    const auto fit = vibecho::fit_quartic_decay(scan->scan);
    *out = {fit.exponent, fit.decoherence_time, fit.residual, fit.points};
  });
}

void ve_scan_free(ve_scan* scan) { delete scan; }

ve_status ve_compare(const ve_params* params, const ve_schedule* schedule,
                     const ve_numeric_options* options, ve_report* out) {
  if (params == nullptr || schedule == nullptr || out == nullptr) {
    return fail(VE_ERR_INVALID_ARGUMENT, "null argument");
  }
  return guarded([&] {
    const Resolved r = resolve(params, schedule, options);
    const auto rep = vibecho::compare_analytic_numeric(r.params, r.schedule, r.potentials, r.config);
    *out = {rep.sup_error,
            rep.sup_error_relative,
            rep.l2_error,
            rep.echo_resolved ? 1 : 0,
            rep.peak_time_error,
            rep.peak_magnitude_error,
            rep.omega_t_total,
            rep.shift_over_width,
            rep.in_linear_regime ? 1 : 0,
            rep.time_step};
  });
}

}  // extern "C"
