#pragma once

#include <array>
#include <cmath>

#include "isoband/grid.hpp"

namespace isoband {

inline double wrap_periodic(double x) noexcept {
  const double r = std::fmod(x, kTwoPi);
  return r < 0 ? r + kTwoPi : r;
}

/// Weights of the 4-point Lagrange stencil at nodes −1, 0, 1, 2 for offset s ∈ [0, 1).
inline std::array<double, 4> lagrange4(double s) noexcept {
  return {-s * (s - 1.0) * (s - 2.0) / 6.0, (s + 1.0) * (s - 1.0) * (s - 2.0) / 2.0,
          -(s + 1.0) * s * (s - 2.0) / 2.0, (s + 1.0) * s * (s - 1.0) / 6.0};
}

/// Evaluates a sampled periodic field anywhere: the trigonometric interpolant
/// is tabulated on a grid `oversample` times finer and read back with tensor
/// 4-point Lagrange interpolation.
class PeriodicInterpolator {
 public:
  PeriodicInterpolator(const TorusGrid& grid, const RealField& field, int oversample);

  double operator()(cd x) const noexcept;
  int table_n1() const noexcept { return t1_; }
  int table_n2() const noexcept { return t2_; }

 private:
  int t1_ = 0, t2_ = 0;
  RealField table_;
};

/// Trigonometric interpolation of an n-point periodic sample set onto
/// n * factor equispaced points.
RealField upsample_periodic(const RealField& samples, int factor);

}  // namespace isoband
