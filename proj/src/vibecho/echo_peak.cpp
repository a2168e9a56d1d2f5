#include "vibecho/echo_peak.hpp"

#include <cmath>
#include <limits>

#include "vibecho/errors.hpp"

namespace vibecho {

EchoPeak extract_echo_peak(const DipoleTrace& trace, const PulseSchedule& schedule,
                           double dephasing_time) {
  const auto& samples = trace.samples;
  if (samples.size() < 3) throw DomainError("trace too short for echo extraction");
  const double centre = schedule.t0 + schedule.tau;
  const bool bounded = std::isfinite(dephasing_time);
  const double half_width = 3.0 * dephasing_time;
  const double lo = bounded ? std::max(schedule.t0, centre - half_width) : schedule.t0;
  const double hi = bounded ? centre + half_width : samples.back().time;
  const double slack = 1e-9 * std::abs(samples[1].time - samples[0].time);
  if (samples.front().time > lo + slack || samples.back().time < hi - slack) {
    throw DomainError("trace does not cover the echo window");
  }

  std::size_t best = samples.size();
  double best_mag = -1.0;
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const double t = samples[i].time;
    if (t < lo - slack || t > hi + slack) continue;
    const double mag = std::abs(samples[i].dipole);
    if (mag > best_mag) {
      best_mag = mag;
      best = i;
    }
  }
  if (best == samples.size()) throw DomainError("no samples inside the echo window");

  EchoPeak peak;
  peak.sample = best;
  peak.time = samples[best].time;
  peak.magnitude = best_mag;
  peak.overlap_warning = bounded ? (schedule.tau < 3.0 * dephasing_time) : true;

  if (best > 0 && best + 1 < samples.size()) {
    const double ym = std::abs(samples[best - 1].dipole);
    const double yp = std::abs(samples[best + 1].dipole);
    const double curvature = ym - 2.0 * best_mag + yp;
    if (curvature < 0.0) {
      const double offset = 0.5 * (ym - yp) / curvature;
      if (std::abs(offset) <= 1.0) {
        const double h = samples[best + 1].time - samples[best].time;
        peak.time += offset * h;
        peak.magnitude = best_mag - 0.25 * (ym - yp) * offset;
      }
    }
  }
  return peak;
}

}  // namespace vibecho
