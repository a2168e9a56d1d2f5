#include "vibecho/state.hpp"

#include <cmath>
#include <numbers>
#include <utility>

#include "vibecho/errors.hpp"

namespace vibecho {

namespace {

double squared_norm(std::span<const cplx> a, double spacing) {
  double sum = 0.0;
  for (const cplx& v : a) sum += std::norm(v);
  return sum * spacing;
}

constexpr double kTruncationTolerance = 1e-12;

}  // namespace

VibronicState::VibronicState(Grid grid, Representation rep, Amplitudes ground, Amplitudes excited)
    : grid_(grid), rep_(rep), ground_(std::move(ground)), excited_(std::move(excited)) {
  if (ground_.size() != grid_.size() || excited_.size() != grid_.size()) {
    throw GridError("amplitude arrays must match the grid size");
  }
}

double VibronicState::norm() const {
  const double h = grid_.spacing(rep_);
  return squared_norm(ground_, h) + squared_norm(excited_, h);
}

VibronicState VibronicState::in(Representation rep) const {
  if (rep == rep_) return *this;
  FourierTransform fft(grid_);
  return in(rep, fft);
}

VibronicState VibronicState::in(Representation rep, FourierTransform& fft) const {
  if (rep == rep_) return *this;
  if (!(fft.grid() == grid_)) throw GridError("transform built for a different grid");
  Amplitudes g(grid_.size()), e(grid_.size());
  if (rep == Representation::Momentum) {
    fft.to_momentum(ground_, g);
    fft.to_momentum(excited_, e);
  } else {
    fft.to_position(ground_, g);
    fft.to_position(excited_, e);
  }
  return VibronicState(grid_, rep, std::move(g), std::move(e));
}

double ground_wavefunction(double p) {
  // Variance 1/2 in both x and p: psi(p) = pi^(-1/4) exp(-p^2 / 2).
  static const double norm = std::pow(std::numbers::pi, -0.25);
  return norm * std::exp(-0.5 * p * p);
}

VibronicState make_ground_state(const Grid& grid, Representation rep) {
  // Mass of a density with standard deviation 1/sqrt(2) outside [-a, a].
  auto two_sided_tail = [](double a) { return std::erfc(a); };
  if (two_sided_tail(grid.half_extent(Representation::Momentum)) > kTruncationTolerance) {
    throw GridError("momentum grid too narrow for the ground-state Gaussian");
  }
  if (two_sided_tail(grid.half_extent(Representation::Position)) > kTruncationTolerance) {
    throw GridError("position grid too narrow for the ground-state Gaussian");
  }
  const std::size_t n = grid.size();
  Amplitudes g(n), e(n, cplx{0.0, 0.0});
  for (std::size_t j = 0; j < n; ++j) g[j] = ground_wavefunction(grid.coordinate(rep, j));
  const double scale = 1.0 / std::sqrt(squared_norm(g, grid.spacing(rep)));
  for (cplx& v : g) v *= scale;
  return VibronicState(grid, rep, std::move(g), std::move(e));
}

cplx dipole_expectation(const VibronicState& state) {
  const auto g = state.ground();
  const auto e = state.excited();
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < g.size(); ++j) sum += std::conj(g[j]) * e[j];
  return sum * state.grid().spacing(state.representation());
}

Populations populations(const VibronicState& state) {
  const double h = state.grid().spacing(state.representation());
  return {squared_norm(state.ground(), h), squared_norm(state.excited(), h)};
}

cplx momentum_autocorrelation(std::span<const cplx> psi, const Grid& grid, double shift) {
  if (psi.size() != grid.size()) throw GridError("amplitude array does not match the grid");
  if (!std::isfinite(shift) || std::abs(shift) > grid.momentum_extent()) {
    throw GridError("autocorrelation shift exceeds the momentum grid");
  }
  // Shifting by q in momentum multiplies psi(x) by exp(i q x).
  FourierTransform fft(grid);
  Amplitudes x(grid.size());
  fft.to_position(psi, x);
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < x.size(); ++j) {
    sum += std::norm(x[j]) * std::polar(1.0, shift * grid.position(j));
  }
  return sum * grid.position_spacing();
}

}  // namespace vibecho
