#pragma once

#include <complex>
#include <span>
#include <vector>

#include "vibecho/grid.hpp"

namespace vibecho {

using cplx = std::complex<double>;

/// Unitary transform between the position and momentum grids of a Grid,
///
///   psi(p_k) = dx / sqrt(2 pi) * sum_j exp(-i p_k x_j) psi(x_j),
///
/// backed by FFTW. Instances own their plans and scratch buffers, so one
/// instance must not be used from two threads at once; separate instances
/// are independent.
class FourierTransform {
 public:
  explicit FourierTransform(const Grid& grid);
  ~FourierTransform();

  FourierTransform(const FourierTransform&) = delete;
  FourierTransform& operator=(const FourierTransform&) = delete;
  FourierTransform(FourierTransform&& other) noexcept;
  FourierTransform& operator=(FourierTransform&& other) noexcept;

  const Grid& grid() const { return grid_; }

  // In-place is allowed (in and out may alias).
  void to_momentum(std::span<const cplx> in, std::span<cplx> out);
  void to_position(std::span<const cplx> in, std::span<cplx> out);

 private:
  void release() noexcept;

  Grid grid_;
  std::vector<double> sign_;  // (-1)^j
  cplx* buffer_ = nullptr;
  void* forward_ = nullptr;
  void* backward_ = nullptr;
};

}  // namespace vibecho
