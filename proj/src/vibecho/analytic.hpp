#pragma once

#include <complex>
#include <limits>
#include <span>

#include "vibecho/grid.hpp"
#include "vibecho/params.hpp"
#include "vibecho/state.hpp"
#include "vibecho/trace.hpp"

// Closed-form impulsive model: the excited manifold feels only the constant
// force F_E, so in momentum space it translates rigidly, psi_E(p, t) =
// psi_E(p - F_E t, 0), while the ground manifold is frozen. Every dipole
// contribution is then a prefactor times the momentum autocorrelation of the
// initial wavepacket, exp(-q^2 / (8 dp^2)) for the harmonic ground state.
//
// All functions taking PhysicalParams accept and return quantities in the
// parameter set's own unit system. Grids are always in natural units.
namespace vibecho::analytic {

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// dp = sqrt(hbar m Omega / 2).
double momentum_width(const PhysicalParams& params);
/// dx = sqrt(hbar / (2 m Omega)).
double position_width(const PhysicalParams& params);

/// t_phi = dp / F_E; kInfinity when F_E = 0.
double dephasing_time(const PhysicalParams& params);
/// Position mismatch F_E tau^2 / m of the two echo paths.
double position_shift(const PhysicalParams& params, double tau);
/// Gaussian closed form exp(-F_E^2 Omega tau^4 / (4 hbar m)).
double decoherence_factor(const PhysicalParams& params, double tau);
/// Characteristic-function form, integral exp(-i dx p / hbar) |psi(p)|^2 dp,
/// for an arbitrary momentum wavefunction on a natural-unit grid.
std::complex<double> decoherence_factor(const PhysicalParams& params, double tau,
                                        std::span<const cplx> psi, const Grid& grid);
/// T = (4 hbar m / (F_E^2 Omega))^(1/4); kInfinity when F_E = 0.
double decoherence_time(const PhysicalParams& params);
/// T / t_phi = 2 (F_E^2 / (hbar m Omega^3))^(1/4); zero when F_E = 0.
double timescale_ratio(const PhysicalParams& params);

/// Autocorrelation of the natural-unit ground state at momentum shift q.
double gaussian_autocorrelation(double q);

struct AnalyticTimescales {
  double momentum_width = 0.0;
  double dephasing_time = 0.0;
  double decoherence_time = 0.0;
  double ratio = 0.0;
  double dimensionless_force = 0.0;
  // Delays with a separable echo lobe and 0.05 < xi < 0.95. Empty
  // (min > max) when the lobes cannot be separated before decoherence.
  double suggested_tau_min = 0.0;
  double suggested_tau_max = 0.0;
};

AnalyticTimescales timescales(const PhysicalParams& params);

/// Bilinear pieces of <d> for t >= t0: conj(ground component) times excited
/// component, with "shifted" meaning the packet that sat at F_E tau when the
/// second pulse arrived.
struct EchoTermDecomposition {
  cplx first_pulse;  // free-induction decay, nonzero only in [t0 - tau, t0)
  cplx ground0_excited0;
  cplx ground0_excited_shifted;
  cplx ground_shifted_excited0;
  cplx ground_shifted_excited_shifted;

  cplx second_response() const { return ground0_excited0 + ground_shifted_excited_shifted; }
  cplx echo() const { return ground_shifted_excited0; }
  cplx residual() const { return ground0_excited_shifted; }
  cplx total() const {
    return first_pulse + ground0_excited0 + ground0_excited_shifted + ground_shifted_excited0 +
           ground_shifted_excited_shifted;
  }
};

/// Pulse rotation convention: G -> cos(a/2) G + e^{i phase} sin(a/2) E,
/// E -> -e^{-i phase} sin(a/2) G + cos(a/2) E.
class EchoModel {
 public:
  EchoModel(const PhysicalParams& params, const PulseSchedule& schedule);

  const PhysicalParams& params() const { return params_; }
  const PulseSchedule& schedule() const { return schedule_; }

  /// Throws DomainError unless t0 - tau <= t < t0.
  VibronicState state_between(double t, const Grid& grid) const;
  /// Throws DomainError unless t >= t0.
  VibronicState state_after(double t, const Grid& grid) const;

  cplx free_induction(double t) const;
  cplx second_response(double t) const;
  cplx echo_term(double t) const;
  cplx echo_with_decoherence(double t) const;
  EchoTermDecomposition decompose(double t) const;

  /// Full dipole at any t: zero before the first pulse. With decoherence
  /// the echo term is damped by xi(tau).
  cplx dipole(double t, bool with_decoherence = false) const;
  Populations populations(double t) const;

  /// (1/2) sin(a1) sin^2(a2 / 2); equals (1/4) sin(a)(1 - cos(a)) for equal areas.
  double echo_prefactor() const;
  double xi() const { return xi_; }

  DipoleTrace trace(std::span<const double> times, bool with_decoherence = true) const;

 private:
  double natural_time(double t) const { return t / time_scale_; }

  PhysicalParams params_;
  PulseSchedule schedule_;
  double time_scale_;
  double force_;  // natural
  double t1_, t0_, tau_;  // natural
  double xi_;
};

VibronicState analytic_state_between(const PhysicalParams& params, const PulseSchedule& schedule,
                                     double t, const Grid& grid);
VibronicState analytic_state_after(const PhysicalParams& params, const PulseSchedule& schedule,
                                   double t, const Grid& grid);
cplx dipole_free_induction(const PhysicalParams& params, const PulseSchedule& schedule, double t);
cplx dipole_second_response(const PhysicalParams& params, const PulseSchedule& schedule, double t);
cplx dipole_echo_term(const PhysicalParams& params, const PulseSchedule& schedule, double t);
cplx echo_envelope_with_decoherence(const PhysicalParams& params, const PulseSchedule& schedule,
                                    double t);

}  // namespace vibecho::analytic
