#include "vibecho/propagator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "vibecho/errors.hpp"

namespace vibecho {

namespace {

constexpr double kAlignmentTolerance = 1e-6;  // in steps
constexpr std::size_t kPositionEdgeCheckEvery = 8;

std::vector<cplx> phase_factors(const Grid& grid, Representation rep, double dt, auto&& energy) {
  std::vector<cplx> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    out[j] = std::polar(1.0, -energy(grid.coordinate(rep, j)) * dt);
  }
  return out;
}

struct NaturalRun {
  double force;
  double dt;
  double t_start;
  std::size_t steps;
  std::size_t first_pulse_step;
  std::size_t second_pulse_step;
};

std::size_t aligned_step(double t, double t_start, double dt, const char* what) {
  const double k = (t - t_start) / dt;
  const double rounded = std::round(k);
  if (rounded < 0.0 || std::abs(k - rounded) > kAlignmentTolerance) {
    throw ConfigError(std::string(what) + " does not fall on a time-step boundary");
  }
  return static_cast<std::size_t>(rounded);
}

// Largest potential energy the wavepacket can reach, from a phase-space
// bound. The ground packet carries at most one excited sojourn of length
// tau; the excited packet falls for the whole run starting from anything
// the ground packet can hold.
double potential_bound(const PotentialSpec& pot, double force, double tau, double duration,
                       double grid_reach) {
  constexpr double kCore = 8.0;
  const double w = pot.ground_freq_ratio;
  const double ground_radius = kCore + 0.5 * force * tau * tau + force * tau;
  const double ground_reach =
      std::min(grid_reach, w > 0.0 ? ground_radius : ground_radius * (1.0 + duration));
  const double ground_momentum = w > 0.0 ? w * ground_radius : ground_radius;
  const double excited_reach =
      std::min(grid_reach, ground_reach + ground_momentum * duration + 0.5 * force * duration * duration);
  return std::max({std::abs(pot.ground(ground_reach)), std::abs(pot.excited(excited_reach, force)),
                   std::abs(pot.excited(-excited_reach, force))});
}

NaturalRun plan_run(const PhysicalParams& params, const PulseSchedule& schedule,
                    const PropagationConfig& config) {
  params.validate();
  schedule.validate();
  if (!(config.dt > 0.0) || !std::isfinite(config.dt)) throw ConfigError("dt must be positive");
  if (!(config.t_end > config.t_start)) throw ConfigError("t_end must exceed t_start");
  if (config.record_stride == 0) throw ConfigError("record_stride must be at least 1");
  const double steps = (config.t_end - config.t_start) / config.dt;
  if (steps > 5e7) throw ConfigError("too many time steps");
  NaturalRun run;
  const Scales s = scales_of(params);
  run.force = dimensionless_force(params);
  run.dt = config.dt / s.time;
  run.t_start = config.t_start / s.time;
  run.steps = static_cast<std::size_t>(std::llround(steps));
  run.first_pulse_step = aligned_step(schedule.first_pulse(), config.t_start, config.dt, "first pulse");
  run.second_pulse_step = aligned_step(schedule.second_pulse(), config.t_start, config.dt, "second pulse");
  if (run.second_pulse_step > run.steps) throw ConfigError("second pulse lies beyond t_end");
  return run;
}

}  // namespace

SplitOperatorStepper::SplitOperatorStepper(const Grid& grid, const PotentialSpec& potentials,
                                           double force, double dt, bool kinetic)
    : grid_(grid), fft_(grid), kinetic_(kinetic) {
  if (!(dt > 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be positive");
  half_kinetic_ = phase_factors(grid, Representation::Momentum, 0.5 * dt,
                                [](double p) { return 0.5 * p * p; });
  ground_phase_ = phase_factors(grid, Representation::Position, dt,
                                [&](double x) { return potentials.ground(x); });
  excited_phase_ = phase_factors(grid, Representation::Position, dt,
                                 [&](double x) { return potentials.excited(x, force); });
}

void SplitOperatorStepper::advance(Amplitudes& psi, const std::vector<cplx>& potential_phase) {
  const std::size_t n = psi.size();
  if (kinetic_) {
    for (std::size_t k = 0; k < n; ++k) psi[k] *= half_kinetic_[k];
  }
  fft_.to_position(psi, psi);
  for (std::size_t j = 0; j < n; ++j) psi[j] *= potential_phase[j];
  fft_.to_momentum(psi, psi);
  if (kinetic_) {
    for (std::size_t k = 0; k < n; ++k) psi[k] *= half_kinetic_[k];
  }
}

void SplitOperatorStepper::step(VibronicState& state) {
  if (state.representation() != Representation::Momentum) {
    throw ConfigError("stepper expects a momentum-representation state");
  }
  if (!(state.grid() == grid_)) throw GridError("state grid differs from the stepper grid");
  advance(state.ground_mut(), ground_phase_);
  advance(state.excited_mut(), excited_phase_);
}

void apply_impulsive_pulse_in_place(VibronicState& state, double area, double phase) {
  const double c = std::cos(area / 2.0);
  const double s = std::sin(area / 2.0);
  const cplx u = std::polar(1.0, phase);
  Amplitudes& g = state.ground_mut();
  Amplitudes& e = state.excited_mut();
  for (std::size_t j = 0; j < g.size(); ++j) {
    const cplx gj = g[j];
    const cplx ej = e[j];
    g[j] = c * gj - std::conj(u) * s * ej;
    e[j] = u * s * gj + c * ej;
  }
}

VibronicState apply_impulsive_pulse(const VibronicState& state, double area, double phase) {
  VibronicState out = state;
  apply_impulsive_pulse_in_place(out, area, phase);
  return out;
}

VibronicState step_split_operator(const VibronicState& state, const PotentialSpec& potentials,
                                  double force, double dt, bool kinetic) {
  SplitOperatorStepper stepper(state.grid(), potentials, force, dt, kinetic);
  VibronicState out = state.in(Representation::Momentum, stepper.transform());
  stepper.step(out);
  return out.in(state.representation(), stepper.transform());
}

double edge_density(std::span<const cplx> ground, std::span<const cplx> excited, double spacing) {
  const std::size_t n = ground.size();
  const std::size_t band = std::max<std::size_t>(1, n / 64);
  double sum = 0.0;
  for (std::size_t j = 0; j < band; ++j) {
    sum += std::norm(ground[j]) + std::norm(excited[j]);
    sum += std::norm(ground[n - 1 - j]) + std::norm(excited[n - 1 - j]);
  }
  return sum * spacing;
}

PropagationConfig default_propagation_config(const PhysicalParams& params,
                                             const PulseSchedule& schedule,
                                             std::size_t grid_points, double steps_per_dephasing) {
  params.validate();
  schedule.validate();
  if (!(steps_per_dephasing > 0.0)) throw ConfigError("steps_per_dephasing must be positive");
  const Scales s = scales_of(params);
  const double f = dimensionless_force(params);
  const double tau = schedule.tau / s.time;
  const double t1 = schedule.first_pulse() / s.time;
  const double t0 = schedule.second_pulse() / s.time;
  const double t_phi = f > 0.0 ? 1.0 / (std::numbers::sqrt2 * f) : std::numeric_limits<double>::infinity();

  const double t_end = f > 0.0 ? t0 + tau + 4.0 * t_phi : t0 + 2.0 * tau;
  const Grid grid = default_grid(f, 1.1 * (t_end - t1), grid_points);

  // Largest kinetic phase on the grid stays below kMaxPhasePerStep.
  const double p_max = grid.half_extent(Representation::Momentum) + grid.momentum_spacing();
  const double v_max = potential_bound(PotentialSpec{}, f, tau, 1.05 * (t_end - t1),
                                       grid.half_extent(Representation::Position));
  double dt_target = std::min({t_phi / steps_per_dephasing, tau / 20.0, 0.005,
                               0.9 * kMaxPhasePerStep / (0.5 * p_max * p_max),
                               0.9 * kMaxPhasePerStep / v_max});
  const double per_tau = std::ceil(tau / dt_target - 1e-9);
  const double dt = tau / per_tau;

  const double pre = std::max(1.0, std::ceil(std::min(0.5 * t_phi, 0.25 * tau) / dt));
  const double t_start = t1 - pre * dt;
  const double total = std::ceil((t_end - t_start) / dt - 1e-9);

  PropagationConfig config;
  config.grid = grid;
  config.dt = dt * s.time;
  config.t_start = t_start * s.time;
  config.t_end = (t_start + total * dt) * s.time;
  config.record_stride = 1;
  config.kinetic = true;
  return config;
}

void validate_propagation(const PhysicalParams& params, const PulseSchedule& schedule,
                          const PotentialSpec& potentials, const PropagationConfig& config) {
  const NaturalRun run = plan_run(params, schedule, config);
  if (!(potentials.ground_freq_ratio >= 0.0) || !(potentials.excited_freq_ratio >= 0.0)) {
    throw ConfigError("potential frequency ratios must be non-negative");
  }
  const Grid& grid = config.grid;
  if (config.kinetic) {
    const double p_max = grid.half_extent(Representation::Momentum) + grid.momentum_spacing();
    if (0.5 * p_max * p_max * run.dt > kMaxPhasePerStep) {
      throw ConfigError("time step too large: kinetic phase per step exceeds 0.5 rad");
    }
  }
  // Potential phases only matter where the wavepacket can be.
  const double duration = static_cast<double>(run.steps) * run.dt;
  const double v_max = potential_bound(potentials, run.force, schedule.tau / scales_of(params).time,
                                       duration, grid.half_extent(Representation::Position));
  if (v_max * run.dt > kMaxPhasePerStep) {
    throw ConfigError("time step too large: potential phase per step exceeds 0.5 rad");
  }
}

DipoleTrace simulate_trace(const PhysicalParams& params, const PulseSchedule& schedule,
                           const PotentialSpec& potentials, const PropagationConfig& config) {
  validate_propagation(params, schedule, potentials, config);
  const NaturalRun run = plan_run(params, schedule, config);

  SplitOperatorStepper stepper(config.grid, potentials, run.force, run.dt, config.kinetic);
  VibronicState state = make_ground_state(config.grid, Representation::Momentum);
  Amplitudes g_x(config.grid.size()), e_x(config.grid.size());

  DipoleTrace trace;
  trace.units = params.units;
  trace.frame_note = kRotatingFrameNote;
  trace.samples.reserve(run.steps / config.record_stride + 2);

  std::size_t records = 0;
  for (std::size_t k = 0; k <= run.steps; ++k) {
    if (k == run.first_pulse_step) {
      apply_impulsive_pulse_in_place(state, schedule.area1, schedule.phase1);
    }
    if (k == run.second_pulse_step) {
      apply_impulsive_pulse_in_place(state, schedule.area2, schedule.phase2);
    }
    if (k % config.record_stride == 0 || k == run.steps) {
      if (edge_density(state.ground(), state.excited(), config.grid.momentum_spacing()) >
          kEdgeDensityLimit) {
        throw NumericalError("wavepacket reached the momentum grid edge");
      }
      if (records % kPositionEdgeCheckEvery == 0 || k == run.steps) {
        stepper.transform().to_position(state.ground(), g_x);
        stepper.transform().to_position(state.excited(), e_x);
        if (edge_density(g_x, e_x, config.grid.position_spacing()) > kEdgeDensityLimit) {
          throw NumericalError("wavepacket reached the position grid edge");
        }
      }
      const Populations pops = populations(state);
      const double t = config.t_start + static_cast<double>(k) * config.dt;
      trace.samples.push_back({t, dipole_expectation(state), pops.ground, pops.excited});
      ++records;
    }
    if (k < run.steps) stepper.step(state);
  }
  return trace;
}

DipoleTrace simulate_echo_trace(const PhysicalParams& params, const PulseSchedule& schedule,
                                const PotentialSpec& potentials, const PropagationConfig& config) {
  DipoleTrace echo;
  for (int k = 0; k < 4; ++k) {
    const double theta = 0.5 * std::numbers::pi * k;
    PulseSchedule cycled = schedule;
    cycled.phase1 += theta;
    const DipoleTrace run = simulate_trace(params, cycled, potentials, config);
    const cplx weight = std::polar(0.25, theta);
    if (k == 0) {
      echo = run;
      for (TraceSample& s : echo.samples) s.dipole *= weight;
      continue;
    }
    for (std::size_t i = 0; i < echo.samples.size(); ++i) {
      echo.samples[i].dipole += weight * run.samples[i].dipole;
    }
  }
  echo.frame_note += "; echo component isolated by first-pulse phase cycling";
  return echo;
}

double time_step_change(const PhysicalParams& params, const PulseSchedule& schedule,
                        const PotentialSpec& potentials, const PropagationConfig& config) {
  PropagationConfig fine = config;
  fine.dt = config.dt / 2.0;
  fine.record_stride = config.record_stride * 2;
  const DipoleTrace coarse_trace = simulate_trace(params, schedule, potentials, config);
  const DipoleTrace fine_trace = simulate_trace(params, schedule, potentials, fine);
  const std::size_t n = std::min(coarse_trace.samples.size(), fine_trace.samples.size());
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    worst = std::max(worst, std::abs(coarse_trace.samples[i].dipole - fine_trace.samples[i].dipole));
  }
  return worst;
}

}  // namespace vibecho
