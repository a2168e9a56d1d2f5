#include "vibecho/grid.hpp"

#include <bit>
#include <cmath>
#include <numbers>

#include "vibecho/errors.hpp"

namespace vibecho {

Grid::Grid(std::size_t n, double momentum_spacing) : n_(n), dp_(momentum_spacing), dx_(0.0) {
  if (n < 2 || !std::has_single_bit(n)) {
    throw GridError("grid size must be a power of two >= 2");
  }
  if (!std::isfinite(momentum_spacing) || !(momentum_spacing > 0.0)) {
    throw GridError("grid spacing must be positive and finite");
  }
  dx_ = 2.0 * std::numbers::pi / (static_cast<double>(n) * dp_);
}

Grid Grid::with_momentum_extent(std::size_t n, double extent) {
  if (n == 0) throw GridError("grid size must be a power of two >= 2");
  return Grid(n, extent / static_cast<double>(n));
}

Grid default_grid(double force, double duration, std::size_t n) {
  const double width = 1.0 / std::numbers::sqrt2;
  const double sweep = std::abs(force) * std::max(duration, 0.0);
  // Symmetric about p = 0: ground components may swing to negative momenta.
  return Grid::with_momentum_extent(n, 2.0 * (8.0 * width + sweep));
}

}  // namespace vibecho
