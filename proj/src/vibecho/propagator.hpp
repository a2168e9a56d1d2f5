#pragma once

#include <cstddef>
#include <vector>

#include "vibecho/fourier.hpp"
#include "vibecho/grid.hpp"
#include "vibecho/params.hpp"
#include "vibecho/state.hpp"
#include "vibecho/trace.hpp"

namespace vibecho {

/// Vibrational potentials in natural units, measured from the ground-state
/// minimum:
///
///   V_G(x) = (1/2) (Omega_G / Omega)^2 x^2
///   V_E(x) = -f x + (1/2) (Omega_E / Omega)^2 x^2
///
/// The electronic gap is dropped (rotating frame). Omega_G / Omega = 1 is the
/// molecule the initial state belongs to; Omega_E = 0 is the purely linear
/// excited surface.
struct PotentialSpec {
  double ground_freq_ratio = 1.0;
  double excited_freq_ratio = 0.0;

  double ground(double x) const { return 0.5 * ground_freq_ratio * ground_freq_ratio * x * x; }
  double excited(double x, double force) const {
    return -force * x + 0.5 * excited_freq_ratio * excited_freq_ratio * x * x;
  }
};

/// Times are in the unit system of the PhysicalParams they are used with;
/// the grid is in natural units.
struct PropagationConfig {
  Grid grid{kDefaultGridPoints, 0.01};
  double dt = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::size_t record_stride = 1;
  // Off: free evolution keeps only the potential phases (positions frozen).
  bool kinetic = true;
};

/// Symmetric (Strang) split step for the block-diagonal vibronic
/// Hamiltonian: half kinetic phase in momentum space, full potential phase
/// in position space, half kinetic phase. States stay in momentum
/// representation between steps. Natural units.
class SplitOperatorStepper {
 public:
  SplitOperatorStepper(const Grid& grid, const PotentialSpec& potentials, double force, double dt,
                       bool kinetic = true);

  void step(VibronicState& state);
  FourierTransform& transform() { return fft_; }

 private:
  void advance(Amplitudes& psi, const std::vector<cplx>& potential_phase);

  Grid grid_;
  FourierTransform fft_;
  bool kinetic_;
  std::vector<cplx> half_kinetic_;
  std::vector<cplx> ground_phase_;
  std::vector<cplx> excited_phase_;
};

/// Instantaneous pulse: the rotation of the analytic model applied at every
/// grid point. Representation-agnostic.
VibronicState apply_impulsive_pulse(const VibronicState& state, double area, double phase = 0.0);
void apply_impulsive_pulse_in_place(VibronicState& state, double area, double phase = 0.0);

/// One split step of length dt (natural units); returns the state in its
/// input representation.
VibronicState step_split_operator(const VibronicState& state, const PotentialSpec& potentials,
                                  double force, double dt, bool kinetic = true);

/// Density within the outermost 1/64 of the grid, on both sides.
double edge_density(std::span<const cplx> ground, std::span<const cplx> excited, double spacing);

inline constexpr double kEdgeDensityLimit = 1e-10;
inline constexpr double kMaxPhasePerStep = 0.5;

/// Step that puts both pulses on step boundaries, at most t_phi / steps
/// per dephasing time; window from shortly before the first pulse to
/// four dephasing times past the echo.
PropagationConfig default_propagation_config(const PhysicalParams& params,
                                             const PulseSchedule& schedule,
                                             std::size_t grid_points = kDefaultGridPoints,
                                             double steps_per_dephasing = 100.0);

/// Throws ConfigError for misaligned pulses, empty windows or a step that
/// advances any phase by more than kMaxPhasePerStep over the populated grid.
void validate_propagation(const PhysicalParams& params, const PulseSchedule& schedule,
                          const PotentialSpec& potentials, const PropagationConfig& config);

/// Full-Hamiltonian propagation of the two-pulse experiment. The pulse due
/// at a recorded instant is applied before that sample is taken. Throws
/// NumericalError when the wavepacket reaches the grid edge.
DipoleTrace simulate_trace(const PhysicalParams& params, const PulseSchedule& schedule,
                           const PotentialSpec& potentials, const PropagationConfig& config);

/// Echo component isolated by four-step cycling of the first pulse phase:
/// the echo carries exp(-i phase1) while the free-induction and
/// second-pulse responses carry exp(+i phase1) and no phase respectively.
/// Populations are those of the uncycled run.
DipoleTrace simulate_echo_trace(const PhysicalParams& params, const PulseSchedule& schedule,
                                const PotentialSpec& potentials, const PropagationConfig& config);

/// sup |d_dt(t) - d_{dt/2}(t)| over the recorded samples.
double time_step_change(const PhysicalParams& params, const PulseSchedule& schedule,
                        const PotentialSpec& potentials, const PropagationConfig& config);

}  // namespace vibecho
