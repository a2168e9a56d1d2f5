#include "vibecho/fit.hpp"

#include <gsl/gsl_fit.h>

#include <cmath>
#include <vector>

#include "vibecho/errors.hpp"

namespace vibecho {

DecayFit fit_quartic_decay(std::span<const double> taus, std::span<const double> xis) {
  if (taus.size() != xis.size()) throw DomainError("tau and xi arrays differ in length");
  bool decayed = false;
  std::vector<double> x, y;
  for (std::size_t i = 0; i < taus.size(); ++i) {
    const double xi = xis[i];
    if (!std::isfinite(xi) || !std::isfinite(taus[i])) continue;
    if (xi < kFitXiUpper) decayed = true;
    if (xi > kFitXiLower && xi < kFitXiUpper && taus[i] > 0.0) {
      x.push_back(std::log(taus[i]));
      y.push_back(std::log(-std::log(xi)));
    }
  }
  if (!decayed) throw DomainError("degenerate fit: no point decays below xi = 0.95");
  if (x.size() < kFitMinPoints) {
    throw DomainError("insufficient points with 0.05 < xi < 0.95 (need 5)");
  }
  double intercept = 0.0, slope = 0.0, cov00 = 0.0, cov01 = 0.0, cov11 = 0.0, sumsq = 0.0;
  gsl_fit_linear(x.data(), 1, y.data(), 1, x.size(), &intercept, &slope, &cov00, &cov01, &cov11,
                 &sumsq);
  DecayFit fit;
  fit.exponent = slope;
  fit.decoherence_time = std::exp(-intercept / slope);
  fit.residual = std::sqrt(sumsq / static_cast<double>(x.size()));
  fit.points = x.size();
  return fit;
}

}  // namespace vibecho
