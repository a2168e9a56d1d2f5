#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "vibecho/analytic.hpp"
#include "vibecho/echo_peak.hpp"
#include "vibecho/errors.hpp"
#include "vibecho/propagator.hpp"

using namespace vibecho;
using doctest::Approx;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kF = 3.079;

PulseSchedule schedule(double t0, double tau, double a1 = kPi / 3, double a2 = kPi / 3) {
  PulseSchedule s;
  s.t0 = t0;
  s.tau = tau;
  s.area1 = a1;
  s.area2 = a2;
  return s;
}

}  // namespace

TEST_CASE("pulse rotation is unitary and matches the convention") {
  const Grid g(256, 0.1);
  VibronicState s = make_ground_state(g);
  const VibronicState r = apply_impulsive_pulse(s, 1.3, 0.6);
  CHECK(r.norm() == Approx(1.0).epsilon(1e-14));
  const std::size_t mid = g.size() / 2;
  const double c = std::cos(0.65), sn = std::sin(0.65);
  CHECK(std::abs(r.ground()[mid] - c * s.ground()[mid]) < 1e-15);
  CHECK(std::abs(r.excited()[mid] - std::polar(sn, 0.6) * s.ground()[mid]) < 1e-15);
  // A 2 pi rotation flips the sign; 4 pi is the identity.
  VibronicState t = apply_impulsive_pulse(apply_impulsive_pulse(r, kPi, 0.2), kPi, 0.2);
  for (std::size_t j = 0; j < g.size(); ++j) CHECK(std::abs(t.ground()[j] + r.ground()[j]) < 1e-14);
}

TEST_CASE("norm is conserved over ten thousand split steps") {
  const Grid g(1024, 0.05);
  VibronicState s = apply_impulsive_pulse(make_ground_state(g), kPi / 3);
  SplitOperatorStepper stepper(g, PotentialSpec{}, 0.5, 0.001);
  for (int k = 0; k < 10000; ++k) stepper.step(s);
  CHECK(std::abs(s.norm() - 1.0) <= 1e-10);
}

TEST_CASE("single step agrees in both representations") {
  const Grid g(512, 0.06);
  const VibronicState s = apply_impulsive_pulse(make_ground_state(g), 0.8);
  const VibronicState a = step_split_operator(s, PotentialSpec{}, kF, 0.01);
  const VibronicState b = step_split_operator(s.in(Representation::Position), PotentialSpec{}, kF, 0.01);
  CHECK(a.representation() == Representation::Momentum);
  CHECK(b.representation() == Representation::Position);
  CHECK(std::abs(dipole_expectation(a) - dipole_expectation(b)) < 1e-12);
}

TEST_CASE("ground state is stationary in the harmonic well") {
  const Grid g(512, 0.06);
  VibronicState s = make_ground_state(g);
  SplitOperatorStepper stepper(g, PotentialSpec{}, kF, 0.005);
  for (int k = 0; k < 400; ++k) stepper.step(s);
  // psi(t) = exp(-i t / 2) psi(0)
  const VibronicState ref = make_ground_state(g);
  const cplx phase = std::polar(1.0, -0.5 * 400 * 0.005);
  double err = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j) err = std::max(err, std::abs(s.ground()[j] - phase * ref.ground()[j]));
  CHECK(err < 1e-5);
}

TEST_CASE("without kinetic term and ground potential the propagation is the analytic model") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(0.8, 0.4);
  PropagationConfig c = default_propagation_config(n, s);
  c.kinetic = false;
  PotentialSpec pot;
  pot.ground_freq_ratio = 0.0;
  const DipoleTrace num = simulate_trace(n, s, pot, c);
  const analytic::EchoModel m(n, s);
  double err = 0.0;
  for (const TraceSample& smp : num.samples) err = std::max(err, std::abs(smp.dipole - m.dipole(smp.time)));
  CHECK(err < 1e-10);
}

TEST_CASE("linearized regime reproduces the analytic trace") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(0.05, 0.05);
  const PropagationConfig c = default_propagation_config(n, s);
  const DipoleTrace num = simulate_trace(n, s, PotentialSpec{}, c);
  const analytic::EchoModel m(n, s);
  double err = 0.0, peak = 0.0;
  for (const TraceSample& smp : num.samples) {
    const double ref = std::abs(m.dipole(smp.time, true));
    err = std::max(err, std::abs(std::abs(smp.dipole) - ref));
    peak = std::max(peak, ref);
  }
  CHECK(err / peak < 0.01);

  const DipoleTrace echo = simulate_echo_trace(n, s, PotentialSpec{}, c);
  const EchoPeak ep = extract_echo_peak(echo, s, analytic::dephasing_time(n));
  CHECK(std::abs(ep.time - 0.1) <= c.dt);
  CHECK(ep.magnitude == Approx(m.echo_prefactor() * m.xi()).epsilon(0.01));
}

TEST_CASE("phase cycling isolates the echo term") {
  // With the kinetic term off and V_G = 0 the model is exact, so the cycled
  // trace must equal the analytic echo term alone.
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(0.5, 0.5, 1.0, 1.4);
  PropagationConfig c = default_propagation_config(n, s);
  c.kinetic = false;
  PotentialSpec pot;
  pot.ground_freq_ratio = 0.0;
  const DipoleTrace echo = simulate_echo_trace(n, s, pot, c);
  const analytic::EchoModel m(n, s);
  double err = 0.0;
  for (const TraceSample& smp : echo.samples) {
    const cplx ref = smp.time >= s.t0 ? m.echo_term(smp.time) : cplx{};
    err = std::max(err, std::abs(smp.dipole - ref));
  }
  CHECK(err < 1e-10);
}

TEST_CASE("halving the time step barely changes the trace") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(0.3, 0.3);
  const PropagationConfig c = default_propagation_config(n, s);
  CHECK(time_step_change(n, s, PotentialSpec{}, c) <= 1e-6);
}

TEST_CASE("default configuration aligns both pulses") {
  const PhysicalParams si = PhysicalParams::typical_molecule();
  PulseSchedule s = schedule(9.1e-15, 9.1e-15);
  const PropagationConfig c = default_propagation_config(si, s);
  const double k1 = (s.first_pulse() - c.t_start) / c.dt;
  const double k0 = (s.second_pulse() - c.t_start) / c.dt;
  CHECK(std::abs(k1 - std::round(k1)) < 1e-6);
  CHECK(std::abs(k0 - std::round(k0)) < 1e-6);
  CHECK(c.t_end >= s.t0 + s.tau + 4.0 * analytic::dephasing_time(si) - c.dt);
  CHECK_NOTHROW(validate_propagation(si, s, PotentialSpec{}, c));
}

TEST_CASE("invalid configurations are rejected") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(0.3, 0.3);
  PropagationConfig c = default_propagation_config(n, s);

  PropagationConfig misaligned = c;
  misaligned.t_start += 0.37 * c.dt;
  CHECK_THROWS_AS(simulate_trace(n, s, PotentialSpec{}, misaligned), ConfigError);

  PropagationConfig coarse = c;
  coarse.dt = 0.3;
  coarse.t_start = 0.0;
  CHECK_THROWS_AS(validate_propagation(n, s, PotentialSpec{}, coarse), ConfigError);

  PropagationConfig empty = c;
  empty.t_end = empty.t_start;
  CHECK_THROWS_AS(simulate_trace(n, s, PotentialSpec{}, empty), ConfigError);

  PotentialSpec negative;
  negative.ground_freq_ratio = -1.0;
  CHECK_THROWS_AS(validate_propagation(n, s, negative, c), ConfigError);
}

TEST_CASE("a packet reaching the grid edge is reported") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(1.0, 1.0);
  PropagationConfig c = default_propagation_config(n, s);
  c.grid = Grid::with_momentum_extent(256, 18.0);
  c.kinetic = false;
  PotentialSpec pot;
  pot.ground_freq_ratio = 0.0;
  c.t_end = c.t_start + std::ceil((4.0 - c.t_start) / c.dt) * c.dt;
  CHECK_THROWS_AS(simulate_trace(n, s, pot, c), NumericalError);
}

TEST_CASE("echo peak extraction") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const PulseSchedule s = schedule(1.0, 1.0);
  const analytic::EchoModel m(n, s);
  DipoleTrace tr;
  for (int k = 0; k <= 300; ++k) {
    const double t = 0.01 * k;
    tr.samples.push_back({t, t >= s.t0 ? m.echo_with_decoherence(t) : cplx{}, 0.0, 0.0});
  }
  const EchoPeak p = extract_echo_peak(tr, s, analytic::dephasing_time(n));
  CHECK(p.time == Approx(2.0).epsilon(1e-6));
  CHECK(p.magnitude == Approx(m.echo_prefactor() * m.xi()).epsilon(1e-4));
  CHECK_FALSE(p.overlap_warning);

  const PulseSchedule close = schedule(0.3, 0.3);
  CHECK(extract_echo_peak(tr, close, analytic::dephasing_time(n)).overlap_warning);

  DipoleTrace cut = tr;
  cut.samples.resize(150);
  CHECK_THROWS_AS(extract_echo_peak(cut, s, analytic::dephasing_time(n)), DomainError);
}
