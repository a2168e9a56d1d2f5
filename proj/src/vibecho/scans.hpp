#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "vibecho/fit.hpp"
#include "vibecho/params.hpp"
#include "vibecho/propagator.hpp"

namespace vibecho {

enum class Engine { Analytic, Numeric };

struct ScanOptions {
  Engine engine = Engine::Analytic;
  PotentialSpec potentials;
  std::size_t grid_points = kDefaultGridPoints;
  double steps_per_dephasing = 100.0;
  bool kinetic = true;
  // Reject points whose uncycled trace moves by more than
  // convergence_tolerance when dt is halved.
  bool verify_convergence = false;
  double convergence_tolerance = 1e-6;
  // 0 picks std::thread::hardware_concurrency().
  unsigned threads = 0;
};

struct ScanPoint {
  double tau = 0.0;
  double peak = 0.0;
  double peak_time = 0.0;
  double xi = 0.0;           // peak / echo prefactor
  double xi_analytic = 0.0;  // Gaussian closed form
  bool overlap_warning = false;
  bool ok = false;
  std::string error;
};

struct EchoScan {
  std::vector<ScanPoint> points;
  double area1 = 0.0;
  double area2 = 0.0;
  double prefactor = 0.0;
  UnitSystem units = UnitSystem::Natural;
};

/// Echo peak against delay. Each point uses t0 = tau (first pulse at t = 0).
/// The numeric engine measures the phase-cycled echo component of a
/// full-Hamiltonian run; the analytic engine evaluates the damped echo term
/// at t0 + tau. Failed points keep ok = false with the error message and do
/// not stop the scan. Points come back in input order.
EchoScan tau_scan(const PhysicalParams& params, double area1, double area2,
                  std::span<const double> taus, const ScanOptions& options);

/// Fit over the successful points of a scan.
DecayFit fit_quartic_decay(const EchoScan& scan);

/// Zero-delay echo amplitude relative to the prefactor, from a least-squares
/// line through ln(peak) against tau^4. 1 for an undamped echo.
double zero_delay_extrapolation(const EchoScan& scan);

struct ComparisonReport {
  double sup_error = 0.0;           // sup | |d_num| - |d_ana| |
  double sup_error_relative = 0.0;  // sup_error / sup |d_ana|
  double l2_error = 0.0;            // (integral (|d_num| - |d_ana|)^2 dt)^(1/2), natural time
  bool echo_resolved = false;       // echo window inside the trace and F_E > 0
  double peak_time_error = 0.0;
  double peak_magnitude_error = 0.0;  // relative to the analytic damped echo peak
  double omega_t_total = 0.0;
  double shift_over_width = 0.0;  // position_shift(tau) / dx
  bool in_linear_regime = false;  // both regime numbers <= 0.1
  double time_step = 0.0;
};

inline constexpr double kLinearRegimeLimit = 0.1;

/// Numeric against analytic (with decoherence) on the numeric time base.
/// Echo peak errors come from the phase-cycled numeric echo component.
ComparisonReport compare_analytic_numeric(const PhysicalParams& params,
                                          const PulseSchedule& schedule,
                                          const PotentialSpec& potentials,
                                          const PropagationConfig& config);

}  // namespace vibecho
