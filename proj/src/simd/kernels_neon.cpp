// NEON variants for AArch64, where Advanced SIMD is architecturally
// guaranteed. One complex<double> fills a float64x2_t.

#include <arm_neon.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace isoband::simd::detail {
namespace {

inline const double* dp(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

inline float64x2_t cmul1(float64x2_t a, float64x2_t b) {
  static const double kSign[2] = {-1.0, 1.0};
  const float64x2_t bre = vdupq_laneq_f64(b, 0);
  const float64x2_t bim = vdupq_laneq_f64(b, 1);
  const float64x2_t asw = vextq_f64(a, a, 1);  // [ai, ar]
  const float64x2_t t = vmulq_f64(vmulq_f64(asw, bim), vld1q_f64(kSign));
  return vfmaq_f64(t, a, bre);
}

void complex_multiply(const cd* a, const cd* b, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(dp(out + i), cmul1(vld1q_f64(dp(a + i)), vld1q_f64(dp(b + i))));
}

void real_scale(const double* s, const cd* a, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    vst1q_f64(dp(out + i), vmulq_n_f64(vld1q_f64(dp(a + i)), s[i]));
}

double squared_norm(const cd* a, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(dp(a + i));
    acc = vfmaq_f64(acc, v, v);
  }
  return vaddvq_f64(acc);
}

double squared_distance(const cd* a, const cd* b, std::size_t n) {
  float64x2_t acc = vdupq_n_f64(0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t d = vsubq_f64(vld1q_f64(dp(a + i)), vld1q_f64(dp(b + i)));
    acc = vfmaq_f64(acc, d, d);
  }
  return vaddvq_f64(acc);
}

double max_abs(const cd* a, std::size_t n) {
  double best = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t v = vld1q_f64(dp(a + i));
    best = std::max(best, vaddvq_f64(vmulq_f64(v, v)));
  }
  return std::sqrt(best);
}

void beltrami_from_metric(const double* g12, const double* g22, cd* q, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t b = vld1q_f64(g12 + i);
    const float64x2_t d = vld1q_f64(g22 + i);
    const float64x2_t one = vdupq_n_f64(1.0);
    const float64x2_t bb = vmulq_f64(b, b);
    const float64x2_t dp1 = vaddq_f64(d, one);
    const float64x2_t den = vfmaq_f64(bb, dp1, dp1);
    const float64x2_t re = vdivq_f64(vsubq_f64(vfmsq_f64(vmulq_f64(d, d), one, one), bb), den);
    const float64x2_t im = vdivq_f64(vmulq_n_f64(vmulq_f64(b, d), -2.0), den);
    vst1q_f64(dp(q + i), vzip1q_f64(re, im));
    vst1q_f64(dp(q + i + 1), vzip2q_f64(re, im));
  }
  for (; i < n; ++i) q[i] = cd(-g12[i], 1.0 - g22[i]) / cd(g12[i], -(g22[i] + 1.0));
}

void jacobian(const cd* fz, const cd* fzb, double* jac, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) {
    const float64x2_t a = vld1q_f64(dp(fz + i));
    const float64x2_t b = vld1q_f64(dp(fzb + i));
    jac[i] = vaddvq_f64(vfmsq_f64(vmulq_f64(a, a), b, b));
  }
}

}  // namespace

const KernelTable& neon_kernels() noexcept {
  static const KernelTable table{Isa::Neon,    complex_multiply, real_scale,
                                 squared_norm, squared_distance, max_abs,
                                 beltrami_from_metric, jacobian};
  return table;
}

}  // namespace isoband::simd::detail
