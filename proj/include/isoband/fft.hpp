#pragma once

#include <memory>
#include <span>

#include "isoband/grid.hpp"

namespace isoband {

/// Complex 2D DFT on an n1×n2 row-major array backed by FFTW.
///
/// forward:  X[m,n] = (1/(n1 n2)) Σ x[i,j] e^{-i(m x1_i + n x2_j)}   (mean-normalised)
/// backward: x[i,j] = Σ X[m,n] e^{+i(m x1_i + n x2_j)}
///
/// With this normalisation the forward output is the table of Fourier
/// coefficients of the trigonometric interpolant. Plans are created once
/// (under a global lock, FFTW planning is not re-entrant); execute calls are
/// thread safe.
class Fft2d {
 public:
  Fft2d(int n1, int n2);
  ~Fft2d();
  Fft2d(const Fft2d&) = delete;
  Fft2d& operator=(const Fft2d&) = delete;
  Fft2d(Fft2d&&) noexcept;
  Fft2d& operator=(Fft2d&&) noexcept;

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }

  void forward(std::span<const cd> in, std::span<cd> out) const;
  void backward(std::span<const cd> in, std::span<cd> out) const;

  ComplexField forward(std::span<const cd> in) const;
  ComplexField forward(std::span<const double> in) const;
  ComplexField backward(std::span<const cd> in) const;

 private:
  struct Plans;
  int n1_;
  int n2_;
  std::unique_ptr<Plans> plans_;
};

/// 1D counterpart with the same normalisation, applied to many contiguous or
/// strided transforms.
class Fft1d {
 public:
  explicit Fft1d(int n);
  ~Fft1d();
  Fft1d(const Fft1d&) = delete;
  Fft1d& operator=(const Fft1d&) = delete;
  Fft1d(Fft1d&&) noexcept;
  Fft1d& operator=(Fft1d&&) noexcept;

  int size() const noexcept { return n_; }
  void forward(std::span<const cd> in, std::span<cd> out) const;
  void backward(std::span<const cd> in, std::span<cd> out) const;

 private:
  struct Plans;
  int n_;
  std::unique_ptr<Plans> plans_;
};

/// Trigonometric interpolation of a coefficient table from an m1×m2 grid onto
/// an n1×n2 grid (either direction, powers of two). Coefficients outside the
/// target band are dropped; the one-sided Nyquist convention of
/// signed_frequency() is respected on both sides.
ComplexField resample_coefficients(std::span<const cd> coeffs, int m1, int m2, int n1, int n2);

}  // namespace isoband
