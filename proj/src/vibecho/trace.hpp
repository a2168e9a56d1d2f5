#pragma once

#include <complex>
#include <string>
#include <vector>

#include "vibecho/params.hpp"

namespace vibecho {

struct TraceSample {
  double time = 0.0;
  std::complex<double> dipole;
  double ground_pop = 0.0;
  double excited_pop = 0.0;
};

/// Time series of the rotating-frame dipole envelope <d>(t). Times are in
/// the unit system of the parameters that produced the trace.
struct DipoleTrace {
  std::vector<TraceSample> samples;
  UnitSystem units = UnitSystem::Natural;
  std::string frame_note;
};

inline constexpr const char* kRotatingFrameNote =
    "rotating frame: carrier exp(-i omega0 t) factored out of the excited manifold";

}  // namespace vibecho
