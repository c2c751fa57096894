#pragma once

#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

namespace isoband {

using cd = std::complex<double>;
using RealField = std::vector<double>;
using ComplexField = std::vector<cd>;

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Uniform sampling of the 2π-periodic torus, row-major with x1 as the slow
/// index: sample (i, j) sits at (2πi/n1, 2πj/n2) and lives at i*n2 + j.
class TorusGrid {
 public:
  TorusGrid(int n1, int n2);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n1_) * n2_; }
  double h1() const noexcept { return kTwoPi / n1_; }
  double h2() const noexcept { return kTwoPi / n2_; }
  double x1(int i) const noexcept { return h1() * i; }
  double x2(int j) const noexcept { return h2() * j; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * n2_ + j;
  }
  /// Area of one sample cell; sums times this approximate integrals over (0,2π)².
  double cell_area() const noexcept { return h1() * h2(); }

  friend bool operator==(const TorusGrid&, const TorusGrid&) = default;

 private:
  int n1_;
  int n2_;
};

/// Strip S₁ = ℝ × (0, π) sampled periodically in x1 and on the closed
/// interval [0, π] in x2 (n2 + 1 nodes, both edges included). Doubling the
/// strip by reflection yields a TorusGrid(n1, 2*n2).
class StripGrid {
 public:
  StripGrid(int n1, int n2);

  int n1() const noexcept { return n1_; }
  int n2() const noexcept { return n2_; }
  int rows() const noexcept { return n2_ + 1; }
  std::size_t size() const noexcept { return static_cast<std::size_t>(n1_) * (n2_ + 1); }
  double h1() const noexcept { return kTwoPi / n1_; }
  double h2() const noexcept { return std::numbers::pi / n2_; }
  double x1(int i) const noexcept { return h1() * i; }
  double x2(int j) const noexcept { return h2() * j; }
  std::size_t index(int i, int j) const noexcept {
    return static_cast<std::size_t>(i) * (n2_ + 1) + j;
  }

  friend bool operator==(const StripGrid&, const StripGrid&) = default;

 private:
  int n1_;
  int n2_;
};

bool is_power_of_two(int n) noexcept;

/// Signed frequency of FFT bin i on an n-point grid, in [-n/2, n/2 - 1].
constexpr int signed_frequency(int i, int n) noexcept { return i < n / 2 ? i : i - n; }

/// Bin holding signed frequency f on an n-point grid.
constexpr int frequency_bin(int f, int n) noexcept { return f >= 0 ? f : f + n; }

template <class F>
RealField sample(const TorusGrid& grid, F&& fn) {
  RealField out(grid.size());
  for (int i = 0; i < grid.n1(); ++i)
    for (int j = 0; j < grid.n2(); ++j) out[grid.index(i, j)] = fn(grid.x1(i), grid.x2(j));
  return out;
}

template <class F>
RealField sample(const StripGrid& grid, F&& fn) {
  RealField out(grid.size());
  for (int i = 0; i < grid.n1(); ++i)
    for (int j = 0; j <= grid.n2(); ++j) out[grid.index(i, j)] = fn(grid.x1(i), grid.x2(j));
  return out;
}

}  // namespace isoband
