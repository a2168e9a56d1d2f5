#pragma once

#include <cstddef>

namespace vibecho {

enum class Representation { Position, Momentum };

/// Uniform, zero-centred grid pair in natural units (hbar = 1).
///
/// Point j sits at (j - n/2) * spacing in both representations, and the
/// spacings obey dx * dp = 2 pi / n so that the discrete Fourier transform
/// maps one grid exactly onto the other.
class Grid {
 public:
  /// n must be a power of two >= 2 and momentum_spacing positive.
  Grid(std::size_t n, double momentum_spacing);

  /// Grid whose momentum points span `extent` (n * dp = extent).
  static Grid with_momentum_extent(std::size_t n, double extent);

  std::size_t size() const { return n_; }
  double momentum_spacing() const { return dp_; }
  double position_spacing() const { return dx_; }
  double spacing(Representation rep) const {
    return rep == Representation::Momentum ? dp_ : dx_;
  }

  double momentum(std::size_t j) const { return offset(j) * dp_; }
  double position(std::size_t j) const { return offset(j) * dx_; }
  double coordinate(Representation rep, std::size_t j) const {
    return offset(j) * spacing(rep);
  }

  double momentum_extent() const { return static_cast<double>(n_) * dp_; }
  double position_extent() const { return static_cast<double>(n_) * dx_; }
  /// Smallest |coordinate| of the two outermost points.
  double half_extent(Representation rep) const {
    return (static_cast<double>(n_ / 2) - 1.0) * spacing(rep);
  }

  friend bool operator==(const Grid&, const Grid&) = default;

 private:
  double offset(std::size_t j) const {
    return static_cast<double>(j) - static_cast<double>(n_ / 2);
  }

  std::size_t n_;
  double dp_;
  double dx_;
};

inline constexpr std::size_t kDefaultGridPoints = 4096;

/// Momentum grid for a run in natural units: 16 ground-state momentum
/// widths plus the sweep force * duration on each side of p = 0.
Grid default_grid(double force, double duration, std::size_t n = kDefaultGridPoints);

}  // namespace vibecho
