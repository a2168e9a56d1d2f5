#include "vibecho/scans.hpp"

#include <gsl/gsl_fit.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "vibecho/analytic.hpp"
#include "vibecho/echo_peak.hpp"
#include "vibecho/errors.hpp"

namespace vibecho {

namespace {

ScanPoint scan_point(const PhysicalParams& params, double area1, double area2, double tau,
                     double prefactor, const ScanOptions& options) {
  ScanPoint point;
  point.tau = tau;
  try {
    PulseSchedule schedule;
    schedule.t0 = tau;
    schedule.tau = tau;
    schedule.area1 = area1;
    schedule.area2 = area2;
    schedule.validate();
    point.xi_analytic = analytic::decoherence_factor(params, tau);
    if (prefactor == 0.0) throw DomainError("echo prefactor vanishes for these pulse areas");

    const double t_phi = analytic::dephasing_time(params);
    if (options.engine == Engine::Analytic) {
      const analytic::EchoModel model(params, schedule);
      point.peak_time = schedule.t0 + tau;
      point.peak = std::abs(model.echo_with_decoherence(point.peak_time));
      point.overlap_warning = tau < 3.0 * t_phi;
    } else {
      PropagationConfig config = default_propagation_config(params, schedule, options.grid_points,
                                                             options.steps_per_dephasing);
      config.kinetic = options.kinetic;
      if (options.verify_convergence) {
        const double change = time_step_change(params, schedule, options.potentials, config);
        if (!(change <= options.convergence_tolerance)) {
          throw NumericalError("time step not converged: halving dt changes the trace by " +
                               std::to_string(change));
        }
      }
      const DipoleTrace echo = simulate_echo_trace(params, schedule, options.potentials, config);
      const EchoPeak peak = extract_echo_peak(echo, schedule, t_phi);
      point.peak = peak.magnitude;
      point.peak_time = peak.time;
      point.overlap_warning = peak.overlap_warning;
    }
    point.xi = point.peak / prefactor;
    point.ok = true;
  } catch (const std::exception& e) {
    point.ok = false;
    point.error = e.what();
  }
  return point;
}

}  // namespace

EchoScan tau_scan(const PhysicalParams& params, double area1, double area2,
                  std::span<const double> taus, const ScanOptions& options) {
  params.validate();
  EchoScan scan;
  scan.area1 = area1;
  scan.area2 = area2;
  scan.units = params.units;
  const double s2 = std::sin(area2 / 2.0);
  scan.prefactor = 0.5 * std::sin(area1) * s2 * s2;
  scan.points.resize(taus.size());

  unsigned threads = options.threads != 0 ? options.threads : std::thread::hardware_concurrency();
  threads = std::clamp<unsigned>(threads, 1, static_cast<unsigned>(std::max<std::size_t>(1, taus.size())));
  if (options.engine == Engine::Analytic) threads = 1;

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < taus.size(); i = next++) {
      scan.points[i] = scan_point(params, area1, area2, taus[i], scan.prefactor, options);
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  return scan;
}

DecayFit fit_quartic_decay(const EchoScan& scan) {
  std::vector<double> taus, xis;
  for (const ScanPoint& p : scan.points) {
    if (!p.ok) continue;
    taus.push_back(p.tau);
    xis.push_back(p.xi);
  }
  return fit_quartic_decay(taus, xis);
}

double zero_delay_extrapolation(const EchoScan& scan) {
  std::vector<double> x, y;
  for (const ScanPoint& p : scan.points) {
    if (!p.ok || !(p.peak > 0.0)) continue;
    x.push_back(std::pow(p.tau, 4));
    y.push_back(std::log(p.peak));
  }
  if (x.size() < 2) throw DomainError("extrapolation needs at least two successful points");
  if (!(scan.prefactor > 0.0)) throw DomainError("echo prefactor vanishes");
  double c0 = 0.0, c1 = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &c0, &c1, &cov00, &cov01, &cov11, &sumsq);
  return std::exp(c0) / scan.prefactor;
}

ComparisonReport compare_analytic_numeric(const PhysicalParams& params,
                                          const PulseSchedule& schedule,
                                          const PotentialSpec& potentials,
                                          const PropagationConfig& config) {
  const DipoleTrace numeric = simulate_trace(params, schedule, potentials, config);
  const analytic::EchoModel model(params, schedule);
  const Scales scales = scales_of(params);

  ComparisonReport report;
  double sup_analytic = 0.0;
  double l2 = 0.0;
  const double dt_natural = config.dt * static_cast<double>(config.record_stride) / scales.time;
  for (const TraceSample& s : numeric.samples) {
    const double a = std::abs(model.dipole(s.time, true));
    const double diff = std::abs(std::abs(s.dipole) - a);
    report.sup_error = std::max(report.sup_error, diff);
    sup_analytic = std::max(sup_analytic, a);
    l2 += diff * diff * dt_natural;
  }
  report.sup_error_relative = sup_analytic > 0.0 ? report.sup_error / sup_analytic : report.sup_error;
  report.l2_error = std::sqrt(l2);
  report.time_step = config.dt;

  report.omega_t_total = (config.t_end - config.t_start) / scales.time;
  report.shift_over_width =
      analytic::position_shift(params, schedule.tau) / analytic::position_width(params);
  report.in_linear_regime = report.omega_t_total <= kLinearRegimeLimit &&
                            report.shift_over_width <= kLinearRegimeLimit;

  const double t_phi = analytic::dephasing_time(params);
  const double echo_time = schedule.t0 + schedule.tau;
  const double prefactor = model.echo_prefactor();
  if (!std::isfinite(t_phi) || prefactor == 0.0 || config.t_end < echo_time + 3.0 * t_phi) {
    return report;
  }
  const DipoleTrace numeric_echo = simulate_echo_trace(params, schedule, potentials, config);
  const EchoPeak peak = extract_echo_peak(numeric_echo, schedule, t_phi);
  const double expected = std::abs(model.echo_with_decoherence(echo_time));
  report.echo_resolved = true;
  report.peak_time_error = std::abs(peak.time - echo_time);
  report.peak_magnitude_error = std::abs(peak.magnitude - expected) / expected;
  return report;
}

}  // namespace vibecho
