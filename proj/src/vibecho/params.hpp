#pragma once

#include <numbers>

namespace vibecho {

enum class UnitSystem { SI, Natural };

/// Reduced Planck constant in J s (CODATA 2018, exact).
inline constexpr double kHbarSI = 1.054571817e-34;

/// Molecular constants of the two-level vibronic model.
///
/// In SI units mass is in kg, frequencies in rad/s and force in N. In
/// natural units hbar = mass = ground_freq = 1, so `force` is the
/// dimensionless force f = F_E / sqrt(hbar m Omega^3) and `gap` is
/// omega_0 / Omega.
struct PhysicalParams {
  double mass = 1.0;
  double ground_freq = 1.0;
  double force = 0.0;
  double gap = 0.0;
  UnitSystem units = UnitSystem::Natural;

  double hbar() const { return units == UnitSystem::SI ? kHbarSI : 1.0; }

  // Throws ConfigError.
  void validate() const;

  static PhysicalParams natural(double force, double gap = 0.0);
  /// m = 1e-25 kg, Omega = 1e14 rad/s, F_E = 1e-8 N.
  static PhysicalParams typical_molecule();
};

/// The value of one natural unit expressed in the parameter set's own units.
/// All members are 1 for natural-unit parameter sets.
struct Scales {
  double time = 1.0;      // 1 / Omega
  double momentum = 1.0;  // sqrt(hbar m Omega)
  double length = 1.0;    // sqrt(hbar / (m Omega))
  double force = 1.0;     // sqrt(hbar m Omega^3)
  double frequency = 1.0; // Omega
};

Scales scales_of(const PhysicalParams& params);

/// f = F_E / sqrt(hbar m Omega^3).
double dimensionless_force(const PhysicalParams& params);

PhysicalParams to_natural(const PhysicalParams& params);

/// Two impulsive pulses at t0 - tau and t0.
///
/// Areas are rotation angles of the electronic two-level system. The
/// optional carrier phases rotate the coupling of each pulse; they are
/// zero unless a caller phase-cycles the sequence.
struct PulseSchedule {
  double t0 = 0.0;
  double tau = 1.0;
  double area1 = std::numbers::pi / 3.0;
  double area2 = std::numbers::pi / 3.0;
  double phase1 = 0.0;
  double phase2 = 0.0;

  double first_pulse() const { return t0 - tau; }
  double second_pulse() const { return t0; }

  // Throws ConfigError.
  void validate() const;

  /// Rescales times by 1 / scales.time.
  PulseSchedule to_natural(const Scales& scales) const;
};

}  // namespace vibecho
