#pragma once

#include <complex>
#include <span>
#include <vector>

#include "vibecho/fourier.hpp"
#include "vibecho/grid.hpp"

namespace vibecho {

using Amplitudes = std::vector<cplx>;

/// Ground and excited vibrational amplitudes on one grid, in one
/// representation. Natural units throughout.
class VibronicState {
 public:
  VibronicState(Grid grid, Representation rep, Amplitudes ground, Amplitudes excited);

  const Grid& grid() const { return grid_; }
  Representation representation() const { return rep_; }
  std::span<const cplx> ground() const { return ground_; }
  std::span<const cplx> excited() const { return excited_; }

  /// Mutable access for propagators working in place.
  Amplitudes& ground_mut() { return ground_; }
  Amplitudes& excited_mut() { return excited_; }

  double norm() const;

  /// Same state in the other representation (a copy if already there).
  VibronicState in(Representation rep) const;
  VibronicState in(Representation rep, FourierTransform& fft) const;

 private:
  Grid grid_;
  Representation rep_;
  Amplitudes ground_;
  Amplitudes excited_;
};

/// Harmonic-oscillator ground state, real and positive, centred at x = p = 0,
/// with momentum variance 1/2 (natural units). Excited amplitude zero.
/// Throws GridError if either representation truncates more than 1e-12 of
/// the norm.
VibronicState make_ground_state(const Grid& grid, Representation rep = Representation::Momentum);

/// Normalised ground-state wavefunction value at momentum p.
double ground_wavefunction(double p);

/// <d> = integral conj(psi_G) psi_E, by quadrature in the state's own
/// representation (the two agree by Parseval).
cplx dipole_expectation(const VibronicState& state);

struct Populations {
  double ground = 0.0;
  double excited = 0.0;
};

Populations populations(const VibronicState& state);

/// integral conj(psi(p)) psi(p - shift) dp for momentum-space amplitudes
/// `psi`. Evaluated as the position-space characteristic function, so the
/// shift need not be a multiple of the grid spacing. Throws GridError when
/// |shift| exceeds the momentum extent.
cplx momentum_autocorrelation(std::span<const cplx> psi, const Grid& grid, double shift);

}  // namespace vibecho
