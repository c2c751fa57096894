#pragma once

// Data-parallel inner loops shared by the solvers. Every kernel has a scalar
// reference implementation; vector variants (AVX2+FMA on x86-64, NEON on
// AArch64) are selected once at runtime from the host CPU and must agree
// with the reference to rounding.
//
// Complex arrays are std::complex<double>, which is layout compatible with
// interleaved (re, im) double pairs.

#include <complex>
#include <cstddef>
#include <span>

namespace isoband::simd {

using cd = std::complex<double>;

enum class Isa { Scalar, Avx2, Neon };

const char* isa_name(Isa isa) noexcept;

struct KernelTable {
  Isa isa;
  // out[i] = a[i] * b[i]
  void (*complex_multiply)(const cd* a, const cd* b, cd* out, std::size_t n);
  // out[i] = s[i] * a[i] with real s
  void (*real_scale)(const double* s, const cd* a, cd* out, std::size_t n);
  // Σ |a[i]|²
  double (*squared_norm)(const cd* a, std::size_t n);
  // Σ |a[i] - b[i]|²
  double (*squared_distance)(const cd* a, const cd* b, std::size_t n);
  // max |a[i]|
  double (*max_abs)(const cd* a, std::size_t n);
  // q[i] = (-g12 + i(1 - g22)) / (g12 - i(g22 + 1))
  void (*beltrami_from_metric)(const double* g12, const double* g22, cd* q, std::size_t n);
  // jac[i] = |fz[i]|² - |fzb[i]|²
  void (*jacobian)(const cd* fz, const cd* fzb, double* jac, std::size_t n);
};

/// Table chosen for this process (first call probes the CPU; the
/// ISOBAND_SIMD environment variable may force "scalar").
const KernelTable& active() noexcept;

/// Table for a specific ISA, or nullptr when it is not compiled in or the
/// host cannot run it.
const KernelTable* table_for(Isa isa) noexcept;

const KernelTable& scalar_table() noexcept;

// Convenience wrappers over active().

inline void complex_multiply(std::span<const cd> a, std::span<const cd> b, std::span<cd> out) {
  active().complex_multiply(a.data(), b.data(), out.data(), out.size());
}
inline void real_scale(std::span<const double> s, std::span<const cd> a, std::span<cd> out) {
  active().real_scale(s.data(), a.data(), out.data(), out.size());
}
inline double squared_norm(std::span<const cd> a) { return active().squared_norm(a.data(), a.size()); }
inline double squared_distance(std::span<const cd> a, std::span<const cd> b) {
  return active().squared_distance(a.data(), b.data(), a.size());
}
inline double max_abs(std::span<const cd> a) { return active().max_abs(a.data(), a.size()); }

}  // namespace isoband::simd
