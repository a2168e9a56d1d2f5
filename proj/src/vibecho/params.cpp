#include "vibecho/params.hpp"

#include <cmath>
#include <string>

#include "vibecho/errors.hpp"

namespace vibecho {

namespace {

bool finite(double v) { return std::isfinite(v); }

}  // namespace

void PhysicalParams::validate() const {
  if (!finite(mass) || !(mass > 0.0)) {
    throw ConfigError("mass must be positive and finite");
  }
  if (!finite(ground_freq) || !(ground_freq > 0.0)) {
    throw ConfigError("ground_freq must be positive and finite");
  }
  if (!finite(force) || force < 0.0) {
    throw ConfigError("force must be non-negative and finite");
  }
  if (!finite(gap) || gap < 0.0) {
    throw ConfigError("gap must be non-negative and finite");
  }
  if (units == UnitSystem::Natural && (mass != 1.0 || ground_freq != 1.0)) {
    throw ConfigError("natural units require mass = ground_freq = 1");
  }
}

PhysicalParams PhysicalParams::natural(double force, double gap) {
  PhysicalParams p;
  p.force = force;
  p.gap = gap;
  p.units = UnitSystem::Natural;
  return p;
}

PhysicalParams PhysicalParams::typical_molecule() {
  PhysicalParams p;
  p.mass = 1e-25;
  p.ground_freq = 1e14;
  p.force = 1e-8;
  p.gap = 0.0;
  p.units = UnitSystem::SI;
  return p;
}

Scales scales_of(const PhysicalParams& params) {
  if (params.units == UnitSystem::Natural) return {};
  const double hbar = params.hbar();
  const double m = params.mass;
  const double w = params.ground_freq;
  Scales s;
  s.time = 1.0 / w;
  s.momentum = std::sqrt(hbar * m * w);
  s.length = std::sqrt(hbar / (m * w));
  s.force = std::sqrt(hbar * m * w * w * w);
  s.frequency = w;
  return s;
}

double dimensionless_force(const PhysicalParams& params) {
  return params.force / scales_of(params).force;
}

PhysicalParams to_natural(const PhysicalParams& params) {
  params.validate();
  const Scales s = scales_of(params);
  return PhysicalParams::natural(params.force / s.force, params.gap / s.frequency);
}

void PulseSchedule::validate() const {
  if (!finite(t0)) throw ConfigError("t0 must be finite");
  if (!finite(tau) || !(tau > 0.0)) throw ConfigError("tau must be positive and finite");
  constexpr double two_pi = 2.0 * std::numbers::pi;
  auto check_area = [&](double area, const char* name) {
    if (!finite(area) || area < 0.0 || area >= two_pi) {
      throw ConfigError(std::string(name) + " must lie in [0, 2pi)");
    }
  };
  check_area(area1, "area1");
  check_area(area2, "area2");
  if (!finite(phase1) || !finite(phase2)) throw ConfigError("pulse phases must be finite");
}

PulseSchedule PulseSchedule::to_natural(const Scales& scales) const {
  PulseSchedule s = *this;
  s.t0 = t0 / scales.time;
  s.tau = tau / scales.time;
  return s;
}

}  // namespace vibecho
