#pragma once

#include <cstddef>

#include "vibecho/params.hpp"
#include "vibecho/trace.hpp"

namespace vibecho {

struct EchoPeak {
  double time = 0.0;
  double magnitude = 0.0;
  std::size_t sample = 0;
  // The echo window reaches back to within 3 t_phi of the second pulse, so
  // its lobe overlaps the second-pulse response in a total-dipole trace.
  bool overlap_warning = false;
};

/// Maximum of |<d>| inside (t0 + tau - 3 t_phi, t0 + tau + 3 t_phi), clipped
/// to t >= t0, refined by a parabola through the best sample and its
/// neighbours. An infinite dephasing time searches everything after t0.
/// Throws DomainError when the trace does not cover the window.
EchoPeak extract_echo_peak(const DipoleTrace& trace, const PulseSchedule& schedule,
                           double dephasing_time);

}  // namespace vibecho
