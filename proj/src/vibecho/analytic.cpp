#include "vibecho/analytic.hpp"

#include <cmath>
#include <numbers>

#include "vibecho/errors.hpp"

namespace vibecho::analytic {

namespace {

// Fitting window of the quartic decay law, see fit.hpp.
constexpr double kXiUpper = 0.95;
constexpr double kXiLower = 0.05;
// Lobes closer than this many dephasing times overlap.
constexpr double kSeparation = 3.0;

}  // namespace

double momentum_width(const PhysicalParams& params) {
  params.validate();
  return std::sqrt(params.hbar() * params.ground_freq * params.mass / 2.0);
}

double position_width(const PhysicalParams& params) {
  params.validate();
  return std::sqrt(params.hbar() / (2.0 * params.mass * params.ground_freq));
}

double dephasing_time(const PhysicalParams& params) {
  const double dp = momentum_width(params);
  if (params.force == 0.0) return kInfinity;
  return dp / params.force;
}

double position_shift(const PhysicalParams& params, double tau) {
  params.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  return params.force * tau * tau / params.mass;
}

double decoherence_factor(const PhysicalParams& params, double tau) {
  params.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  const double f = dimensionless_force(params);
  const double wt = tau * params.ground_freq;
  return std::exp(-0.25 * f * f * wt * wt * wt * wt);
}

std::complex<double> decoherence_factor(const PhysicalParams& params, double tau,
                                        std::span<const cplx> psi, const Grid& grid) {
  params.validate();
  if (!(tau >= 0.0)) throw DomainError("tau must be non-negative");
  if (psi.size() != grid.size()) throw GridError("amplitude array does not match the grid");
  const double tn = tau * params.ground_freq;
  const double shift = dimensionless_force(params) * tn * tn;
  cplx sum{0.0, 0.0};
  for (std::size_t j = 0; j < psi.size(); ++j) {
    sum += std::polar(std::norm(psi[j]), -shift * grid.momentum(j));
  }
  return sum * grid.momentum_spacing();
}

double decoherence_time(const PhysicalParams& params) {
  params.validate();
  if (params.force == 0.0) return kInfinity;
  const double f = dimensionless_force(params);
  return std::pow(4.0 / (f * f), 0.25) / params.ground_freq;
}

double timescale_ratio(const PhysicalParams& params) {
  params.validate();
  return 2.0 * std::sqrt(dimensionless_force(params));
}

double gaussian_autocorrelation(double q) { return std::exp(-0.25 * q * q); }

AnalyticTimescales timescales(const PhysicalParams& params) {
  AnalyticTimescales out;
  out.momentum_width = momentum_width(params);
  out.dephasing_time = dephasing_time(params);
  out.decoherence_time = decoherence_time(params);
  out.ratio = timescale_ratio(params);
  out.dimensionless_force = dimensionless_force(params);
  if (params.force == 0.0) {
    out.suggested_tau_min = kInfinity;
    out.suggested_tau_max = kInfinity;
    return out;
  }
  // xi = exp(-(tau / T)^4)  =>  tau = T (-ln xi)^(1/4).
  const double t_upper = out.decoherence_time * std::pow(-std::log(kXiLower), 0.25);
  const double t_lower = out.decoherence_time * std::pow(-std::log(kXiUpper), 0.25);
  out.suggested_tau_min = std::max(t_lower, kSeparation * out.dephasing_time);
  out.suggested_tau_max = t_upper;
  return out;
}

EchoModel::EchoModel(const PhysicalParams& params, const PulseSchedule& schedule)
    : params_(params), schedule_(schedule) {
  params_.validate();
  schedule_.validate();
  time_scale_ = scales_of(params_).time;
  force_ = dimensionless_force(params_);
  t0_ = natural_time(schedule_.t0);
  tau_ = natural_time(schedule_.tau);
  t1_ = t0_ - tau_;
  xi_ = decoherence_factor(params_, schedule_.tau);
}

namespace {

struct Rotation {
  double c;
  double s;
  cplx u;
};

Rotation rotation(double area, double phase) {
  return {std::cos(area / 2.0), std::sin(area / 2.0), std::polar(1.0, phase)};
}

}  // namespace

double EchoModel::echo_prefactor() const {
  const double s2 = std::sin(schedule_.area2 / 2.0);
  return 0.5 * std::sin(schedule_.area1) * s2 * s2;
}

VibronicState EchoModel::state_between(double t, const Grid& grid) const {
  if (t < schedule_.first_pulse() || t >= schedule_.second_pulse()) {
    throw DomainError("time outside the inter-pulse window [t0 - tau, t0)");
  }
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  const double shift = force_ * (natural_time(t) - t1_);
  Amplitudes g(grid.size()), e(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double p = grid.momentum(j);
    g[j] = r1.c * ground_wavefunction(p);
    e[j] = r1.u * r1.s * ground_wavefunction(p - shift);
  }
  return VibronicState(grid, Representation::Momentum, std::move(g), std::move(e));
}

VibronicState EchoModel::state_after(double t, const Grid& grid) const {
  if (t < schedule_.second_pulse()) throw DomainError("time precedes the second pulse");
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  const Rotation r2 = rotation(schedule_.area2, schedule_.phase2);
  const double kick = force_ * tau_;
  const double sweep = force_ * (natural_time(t) - t0_);
  const cplx g0 = r1.c * r2.c;
  const cplx g_shifted = -std::conj(r2.u) * r1.u * r1.s * r2.s;
  const cplx e0 = r2.u * r2.s * r1.c;
  const cplx e_shifted = r1.u * r2.c * r1.s;
  Amplitudes g(grid.size()), e(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double p = grid.momentum(j);
    g[j] = g0 * ground_wavefunction(p) + g_shifted * ground_wavefunction(p - kick);
    e[j] = e0 * ground_wavefunction(p - sweep) + e_shifted * ground_wavefunction(p - kick - sweep);
  }
  return VibronicState(grid, Representation::Momentum, std::move(g), std::move(e));
}

cplx EchoModel::free_induction(double t) const {
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  return r1.c * r1.u * r1.s * gaussian_autocorrelation(force_ * (natural_time(t) - t1_));
}

EchoTermDecomposition EchoModel::decompose(double t) const {
  EchoTermDecomposition d{};
  if (t < schedule_.first_pulse()) return d;
  if (t < schedule_.second_pulse()) {
    d.first_pulse = free_induction(t);
    return d;
  }
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  const Rotation r2 = rotation(schedule_.area2, schedule_.phase2);
  const double s = natural_time(t) - t0_;
  const double f = force_;
  const double a_zero = gaussian_autocorrelation(f * s);
  d.ground0_excited0 = r1.c * r2.c * r2.u * r2.s * r1.c * a_zero;
  d.ground0_excited_shifted =
      r1.c * r2.c * r1.u * r2.c * r1.s * gaussian_autocorrelation(f * (s + tau_));
  d.ground_shifted_excited0 = -r2.u * std::conj(r1.u) * r1.s * r2.s * r2.u * r2.s * r1.c *
                              gaussian_autocorrelation(f * (s - tau_));
  d.ground_shifted_excited_shifted = -r2.u * r1.s * r1.s * r2.s * r2.c * a_zero;
  return d;
}

cplx EchoModel::second_response(double t) const {
  // ground0_excited0 + ground_shifted_excited_shifted, valid as a formula at any t.
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  const Rotation r2 = rotation(schedule_.area2, schedule_.phase2);
  const double s = natural_time(t) - t0_;
  return r2.u * r2.s * r2.c * (r1.c * r1.c - r1.s * r1.s) * gaussian_autocorrelation(force_ * s);
}

cplx EchoModel::echo_term(double t) const {
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  const Rotation r2 = rotation(schedule_.area2, schedule_.phase2);
  const double s = natural_time(t) - t0_;
  return -r2.u * r2.u * std::conj(r1.u) * r1.s * r1.c * r2.s * r2.s *
         gaussian_autocorrelation(force_ * (s - tau_));
}

cplx EchoModel::echo_with_decoherence(double t) const { return echo_term(t) * xi_; }

cplx EchoModel::dipole(double t, bool with_decoherence) const {
  EchoTermDecomposition d = decompose(t);
  if (with_decoherence) d.ground_shifted_excited0 *= xi_;
  return d.total();
}

Populations EchoModel::populations(double t) const {
  if (t < schedule_.first_pulse()) return {1.0, 0.0};
  const Rotation r1 = rotation(schedule_.area1, schedule_.phase1);
  if (t < schedule_.second_pulse()) return {r1.c * r1.c, r1.s * r1.s};
  const Rotation r2 = rotation(schedule_.area2, schedule_.phase2);
  const double overlap = std::real(std::conj(r2.u) * r1.u) * gaussian_autocorrelation(force_ * tau_);
  const double cross = 2.0 * r1.c * r2.c * r1.s * r2.s * overlap;
  return {r1.c * r1.c * r2.c * r2.c + r1.s * r1.s * r2.s * r2.s - cross,
          r2.s * r2.s * r1.c * r1.c + r2.c * r2.c * r1.s * r1.s + cross};
}

DipoleTrace EchoModel::trace(std::span<const double> times, bool with_decoherence) const {
  DipoleTrace out;
  out.units = params_.units;
  out.frame_note = kRotatingFrameNote;
  if (with_decoherence) out.frame_note += "; echo term damped by the decoherence factor";
  out.samples.reserve(times.size());
  for (double t : times) {
    const Populations pops = populations(t);
    out.samples.push_back({t, dipole(t, with_decoherence), pops.ground, pops.excited});
  }
  return out;
}

VibronicState analytic_state_between(const PhysicalParams& params, const PulseSchedule& schedule,
                                     double t, const Grid& grid) {
  return EchoModel(params, schedule).state_between(t, grid);
}

VibronicState analytic_state_after(const PhysicalParams& params, const PulseSchedule& schedule,
                                   double t, const Grid& grid) {
  return EchoModel(params, schedule).state_after(t, grid);
}

cplx dipole_free_induction(const PhysicalParams& params, const PulseSchedule& schedule, double t) {
  return EchoModel(params, schedule).free_induction(t);
}

cplx dipole_second_response(const PhysicalParams& params, const PulseSchedule& schedule, double t) {
  return EchoModel(params, schedule).second_response(t);
}

cplx dipole_echo_term(const PhysicalParams& params, const PulseSchedule& schedule, double t) {
  return EchoModel(params, schedule).echo_term(t);
}

cplx echo_envelope_with_decoherence(const PhysicalParams& params, const PulseSchedule& schedule,
                                    double t) {
  return EchoModel(params, schedule).echo_with_decoherence(t);
}

}  // namespace vibecho::analytic
