#include "vibecho/fourier.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <numbers>
#include <utility>

#include "vibecho/errors.hpp"

namespace vibecho {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FourierTransform::FourierTransform(const Grid& grid) : grid_(grid), sign_(grid.size()) {
  const std::size_t n = grid.size();
  for (std::size_t j = 0; j < n; ++j) sign_[j] = (j % 2 == 0) ? 1.0 : -1.0;

  buffer_ = reinterpret_cast<cplx*>(fftw_malloc(sizeof(fftw_complex) * n));
  if (buffer_ == nullptr) throw std::bad_alloc();
  auto* buf = reinterpret_cast<fftw_complex*>(buffer_);
  const int size = static_cast<int>(n);
  {
    std::lock_guard lock(planner_mutex());
    forward_ = fftw_plan_dft_1d(size, buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
    backward_ = fftw_plan_dft_1d(size, buf, buf, FFTW_BACKWARD, FFTW_ESTIMATE);
  }
  if (forward_ == nullptr || backward_ == nullptr) {
    release();
    throw NumericalError("FFTW planning failed");
  }
}

FourierTransform::~FourierTransform() { release(); }

FourierTransform::FourierTransform(FourierTransform&& other) noexcept
    : grid_(other.grid_),
      sign_(std::move(other.sign_)),
      buffer_(std::exchange(other.buffer_, nullptr)),
      forward_(std::exchange(other.forward_, nullptr)),
      backward_(std::exchange(other.backward_, nullptr)) {}

FourierTransform& FourierTransform::operator=(FourierTransform&& other) noexcept {
  if (this != &other) {
    release();
    grid_ = other.grid_;
    sign_ = std::move(other.sign_);
    buffer_ = std::exchange(other.buffer_, nullptr);
    forward_ = std::exchange(other.forward_, nullptr);
    backward_ = std::exchange(other.backward_, nullptr);
  }
  return *this;
}

void FourierTransform::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_));
  if (backward_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(backward_));
  if (buffer_ != nullptr) fftw_free(buffer_);
  forward_ = backward_ = nullptr;
  buffer_ = nullptr;
}

// With x_j = (j - n/2) dx and p_k = (k - n/2) dp, the kernel factorises as
// exp(-2 pi i j k / n) (-1)^j (-1)^k (-1)^(n/2).
void FourierTransform::to_momentum(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = grid_.size();
  if (in.size() != n || out.size() != n) throw GridError("transform size mismatch");
  for (std::size_t j = 0; j < n; ++j) buffer_[j] = in[j] * sign_[j];
  fftw_execute(static_cast<fftw_plan>(forward_));
  const double half_sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  const double scale = half_sign * grid_.position_spacing() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t k = 0; k < n; ++k) out[k] = buffer_[k] * (scale * sign_[k]);
}

void FourierTransform::to_position(std::span<const cplx> in, std::span<cplx> out) {
  const std::size_t n = grid_.size();
  if (in.size() != n || out.size() != n) throw GridError("transform size mismatch");
  for (std::size_t k = 0; k < n; ++k) buffer_[k] = in[k] * sign_[k];
  fftw_execute(static_cast<fftw_plan>(backward_));
  const double half_sign = ((n / 2) % 2 == 0) ? 1.0 : -1.0;
  const double scale = half_sign * grid_.momentum_spacing() / std::sqrt(2.0 * std::numbers::pi);
  for (std::size_t j = 0; j < n; ++j) out[j] = buffer_[j] * (scale * sign_[j]);
}

}  // namespace vibecho
