#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "oracles.hpp"
#include "vibecho/analytic.hpp"
#include "vibecho/errors.hpp"

using namespace vibecho;
using namespace vibecho::analytic;
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

TEST_CASE("timescales of the typical molecule") {
  const PhysicalParams p = PhysicalParams::typical_molecule();
  CHECK(momentum_width(p) == Approx(oracle::kTypicalMomentumWidth).epsilon(1e-12));
  CHECK(dephasing_time(p) == Approx(oracle::kTypicalDephasingTime).epsilon(1e-12));
  CHECK(decoherence_time(p) == Approx(oracle::kTypicalDecoherenceTime).epsilon(1e-12));
  CHECK(timescale_ratio(p) == Approx(oracle::kTypicalRatio).epsilon(1e-12));
  CHECK(position_shift(p, 5e-15) == Approx(2.5e-12).epsilon(1e-12));

  const AnalyticTimescales ts = timescales(p);
  CHECK(ts.decoherence_time / ts.dephasing_time == Approx(ts.ratio).epsilon(1e-13));
  CHECK(ts.suggested_tau_min < ts.suggested_tau_max);
  CHECK(decoherence_factor(p, ts.suggested_tau_max) == Approx(0.05).epsilon(1e-12));
}

TEST_CASE("natural and SI timescales agree") {
  const PhysicalParams si = PhysicalParams::typical_molecule();
  const PhysicalParams n = to_natural(si);
  const double unit = scales_of(si).time;
  CHECK(dephasing_time(n) * unit == Approx(dephasing_time(si)).epsilon(1e-13));
  CHECK(decoherence_time(n) * unit == Approx(decoherence_time(si)).epsilon(1e-13));
  CHECK(decoherence_factor(n, 0.4) == Approx(decoherence_factor(si, 0.4 * unit)).epsilon(1e-13));
}

TEST_CASE("decoherence factor closed form") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  CHECK(decoherence_factor(n, 0.4) == Approx(oracle::kXiAtPoint4).epsilon(1e-13));
  CHECK(decoherence_factor(n, 0.0) == 1.0);
  for (double tau : {0.1, 0.3, 0.5, 0.8}) {
    CHECK(decoherence_factor(n, tau) == Approx(oracle::quartic_xi(kF, tau)).epsilon(1e-13));
  }
}

TEST_CASE("characteristic-function decoherence factor matches the closed form") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const Grid g(2048, 0.02);
  std::vector<cplx> psi(g.size());
  for (std::size_t j = 0; j < g.size(); ++j) psi[j] = oracle::phi0(g.momentum(j));
  for (double tau : {0.2, 0.5, 0.7}) {
    const cplx xi = decoherence_factor(n, tau, psi, g);
    CHECK(std::abs(xi - oracle::quartic_xi(kF, tau)) < 1e-12);
  }
}

TEST_CASE("zero force: no dephasing") {
  const PhysicalParams n = PhysicalParams::natural(0.0);
  CHECK(std::isinf(dephasing_time(n)));
  CHECK(std::isinf(decoherence_time(n)));
  CHECK(timescale_ratio(n) == 0.0);
  CHECK(decoherence_factor(n, 10.0) == 1.0);

  // Everything rephases: the total dipole after both pulses is (1/2) sin(a1 + a2).
  for (double a1 : {0.3, 1.0, 2.2}) {
    for (double a2 : {0.5, 1.3, 2.9}) {
      const EchoModel m(n, schedule(2.0, 1.0, a1, a2));
      CHECK(std::abs(m.dipole(2.7) - 0.5 * std::sin(a1 + a2)) < 1e-14);
    }
  }
}

TEST_CASE("dipole agrees with brute-force quadrature of explicit wavepackets") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  oracle::LinearModel ref;
  ref.f = kF;
  ref.t0 = 1.0;
  ref.tau = 0.6;
  ref.a1 = 1.1;
  ref.a2 = 0.7;
  ref.th1 = 0.3;
  ref.th2 = -1.2;
  PulseSchedule s = schedule(1.0, 0.6, 1.1, 0.7);
  s.phase1 = 0.3;
  s.phase2 = -1.2;
  const EchoModel m(n, s);
  for (double t : {0.2, 0.4, 0.41, 0.8, 0.999, 1.0, 1.2, 1.6, 1.9}) {
    CAPTURE(t);
    CHECK(std::abs(m.dipole(t) - ref.dipole(t)) < 1e-12);
    CHECK(m.populations(t).excited == Approx(ref.excited_population(t)).epsilon(1e-12));
  }
}

TEST_CASE("prefactors at zero momentum mismatch") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  for (int k = 1; k <= 20; ++k) {
    const double a = k * kPi / 21.0;
    CAPTURE(a);
    const EchoModel m(n, schedule(1.0, 0.5, a, a));
    CHECK(std::abs(std::abs(m.free_induction(0.5)) - oracle::first_lobe(a)) < 1e-12);
    CHECK(std::abs(std::abs(m.second_response(1.0)) - oracle::second_lobe(a)) < 1e-12);
    CHECK(std::abs(std::abs(m.echo_term(1.5)) - oracle::echo_lobe(a)) < 1e-12);
    CHECK(std::abs(m.echo_prefactor() - oracle::echo_lobe(a)) < 1e-12);
  }
}

TEST_CASE("pi/3 pulses give the reference lobe heights") {
  const EchoModel m(PhysicalParams::natural(kF), schedule(1.0, 0.5));
  CHECK(std::abs(m.free_induction(0.5)) == Approx(2.0 * oracle::kSqrt3Over8).epsilon(1e-14));
  CHECK(std::abs(m.second_response(1.0)) == Approx(oracle::kSqrt3Over8).epsilon(1e-14));
  CHECK(std::abs(m.echo_term(1.5)) == Approx(oracle::kSqrt3Over16).epsilon(1e-14));
  // Residual of the first coherence at t0; f tau = 2 gives A = e^-1.
  const EchoModel w(PhysicalParams::natural(4.0), schedule(1.0, 0.5));
  const EchoTermDecomposition d = w.decompose(1.0);
  CHECK(std::abs(d.ground0_excited_shifted) ==
        Approx(oracle::kThreeSqrt3Over16 * std::exp(-1.0)).epsilon(1e-13));
}

TEST_CASE("echo amplitude peaks at a = 2 pi / 3") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const int steps = 3600;
  double best = -1.0, best_a = 0.0;
  for (int k = 0; k < steps; ++k) {
    const double a = k * 2.0 * kPi / steps;
    const double v = std::abs(EchoModel(n, schedule(1.0, 0.5, a, a)).echo_term(1.5));
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  CHECK(std::abs(best_a - 2.0 * kPi / 3.0) <= 2.0 * kPi / steps);
  CHECK(best == Approx(0.25 * std::sin(2 * kPi / 3) * 1.5).epsilon(1e-12));
}

TEST_CASE("term decomposition is complete") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  PulseSchedule s = schedule(1.0, 0.4, 0.9, 1.7);
  s.phase1 = 0.8;
  const EchoModel m(n, s);
  const Grid g(4096, 0.01);
  for (double t : {1.0, 1.2, 1.4, 1.9}) {
    const EchoTermDecomposition d = m.decompose(t);
    const cplx direct = dipole_expectation(m.state_after(t, g));
    CHECK(std::abs(d.total() - direct) < 1e-10);
    CHECK(std::abs(d.total() - m.dipole(t)) < 1e-14);
    CHECK(std::abs(d.second_response() + d.echo() + d.residual() - d.total()) < 1e-15);
  }
  const cplx between = dipole_expectation(m.state_between(0.8, g));
  CHECK(std::abs(between - m.dipole(0.8)) < 1e-10);
}

TEST_CASE("analytic states are confined to their time ranges") {
  const EchoModel m(PhysicalParams::natural(kF), schedule(1.0, 0.4));
  const Grid g(1024, 0.05);
  CHECK_THROWS_AS(m.state_between(0.5, g), DomainError);
  CHECK_THROWS_AS(m.state_between(1.0, g), DomainError);
  CHECK_THROWS_AS(m.state_after(0.9, g), DomainError);
  CHECK_NOTHROW(m.state_after(1.0, g));
  CHECK(m.dipole(0.5) == cplx{});
}

TEST_CASE("echo envelope is symmetric about t0 + tau") {
  const PhysicalParams n = PhysicalParams::natural(kF);
  const EchoModel m(n, schedule(2.0, 0.7));
  for (double dt : {0.01, 0.05, 0.1, 0.2, 0.4}) {
    CHECK(std::abs(std::abs(m.echo_with_decoherence(2.7 + dt)) -
                   std::abs(m.echo_with_decoherence(2.7 - dt))) < 1e-9);
  }
  CHECK(std::abs(m.echo_with_decoherence(2.7)) ==
        Approx(oracle::kSqrt3Over16 * oracle::quartic_xi(kF, 0.7)).epsilon(1e-13));
}

TEST_CASE("populations are conserved and match the pulse rotation") {
  const EchoModel m(PhysicalParams::natural(kF), schedule(1.0, 0.4, 1.0, 2.0));
  for (double t : {0.0, 0.7, 1.0, 1.5, 3.0}) {
    const Populations p = m.populations(t);
    CHECK(p.ground + p.excited == Approx(1.0).epsilon(1e-14));
  }
  CHECK(m.populations(0.7).excited == Approx(std::pow(std::sin(0.5), 2)).epsilon(1e-14));
}

TEST_CASE("analytic trace samples the dipole with decoherence") {
  const PhysicalParams si = PhysicalParams::typical_molecule();
  PulseSchedule s = schedule(2e-14, 9e-15);
  const EchoModel m(si, s);
  const std::vector<double> times = {0.0, 1.2e-14, 2.5e-14, 2.9e-14};
  const DipoleTrace tr = m.trace(times);
  REQUIRE(tr.samples.size() == times.size());
  CHECK(tr.units == UnitSystem::SI);
  for (std::size_t i = 0; i < times.size(); ++i) {
    CHECK(tr.samples[i].dipole == m.dipole(times[i], true));
  }
  CHECK(std::abs(m.dipole(2.9e-14, true)) < std::abs(m.dipole(2.9e-14, false)));
}
