#pragma once

#include <cstddef>
#include <span>

namespace vibecho {

/// xi(tau) = exp(-(tau / T)^n) fitted as a straight line
/// ln(-ln xi) = n ln tau - n ln T.
struct DecayFit {
  double exponent = 0.0;
  double decoherence_time = 0.0;
  double residual = 0.0;  // RMS residual of ln(-ln xi)
  std::size_t points = 0;
};

inline constexpr double kFitXiLower = 0.05;
inline constexpr double kFitXiUpper = 0.95;
inline constexpr std::size_t kFitMinPoints = 5;

/// Uses only points with kFitXiLower < xi < kFitXiUpper and tau > 0.
/// Throws DomainError when no point has decayed below kFitXiUpper
/// (degenerate) or fewer than kFitMinPoints remain.
DecayFit fit_quartic_decay(std::span<const double> taus, std::span<const double> xis);

}  // namespace vibecho
