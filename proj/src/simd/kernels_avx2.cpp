// AVX2 + FMA variants. This translation unit is the only one compiled with
// -mavx2 -mfma; nothing here may be called unless dispatch confirmed support.

#include <immintrin.h>

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace isoband::simd::detail {
namespace {

inline const double* dp(const cd* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cd* p) { return reinterpret_cast<double*>(p); }

// [ar0, ai0, ar1, ai1] * [br0, bi0, br1, bi1]
inline __m256d cmul2(__m256d a, __m256d b) {
  const __m256d bre = _mm256_movedup_pd(b);
  const __m256d bim = _mm256_permute_pd(b, 0xF);
  const __m256d asw = _mm256_permute_pd(a, 0x5);
  return _mm256_fmaddsub_pd(a, bre, _mm256_mul_pd(asw, bim));
}

inline double hsum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void complex_multiply(const cd* a, const cd* b, cd* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d va = _mm256_loadu_pd(dp(a + i));
    const __m256d vb = _mm256_loadu_pd(dp(b + i));
    _mm256_storeu_pd(dp(out + i), cmul2(va, vb));
  }
  for (; i < n; ++i) out[i] = a[i] * b[i];
}

void real_scale(const double* s, const cd* a, cd* out, std::size_t n) {
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m128d s2 = _mm_loadu_pd(s + i);
    const __m256d ss = _mm256_permute4x64_pd(_mm256_castpd128_pd256(s2), 0x50);
    _mm256_storeu_pd(dp(out + i), _mm256_mul_pd(ss, _mm256_loadu_pd(dp(a + i))));
  }
  for (; i < n; ++i) out[i] = s[i] * a[i];
}

double squared_norm(const cd* a, std::size_t n) {
  __m256d acc0 = _mm256_setzero_pd();
  __m256d acc1 = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d v0 = _mm256_loadu_pd(dp(a + i));
    const __m256d v1 = _mm256_loadu_pd(dp(a + i + 2));
    acc0 = _mm256_fmadd_pd(v0, v0, acc0);
    acc1 = _mm256_fmadd_pd(v1, v1, acc1);
  }
  double sum = hsum(_mm256_add_pd(acc0, acc1));
  for (; i < n; ++i) sum += std::norm(a[i]);
  return sum;
}

double squared_distance(const cd* a, const cd* b, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d d = _mm256_sub_pd(_mm256_loadu_pd(dp(a + i)), _mm256_loadu_pd(dp(b + i)));
    acc = _mm256_fmadd_pd(d, d, acc);
  }
  double sum = hsum(acc);
  for (; i < n; ++i) sum += std::norm(a[i] - b[i]);
  return sum;
}

double max_abs(const cd* a, std::size_t n) {
  __m256d best = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(a + i));
    const __m256d sq = _mm256_mul_pd(v, v);
    best = _mm256_max_pd(best, _mm256_hadd_pd(sq, sq));
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, best);
  double m = std::sqrt(std::max(std::max(lanes[0], lanes[1]), std::max(lanes[2], lanes[3])));
  for (; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

void beltrami_from_metric(const double* g12, const double* g22, cd* q, std::size_t n) {
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d mtwo = _mm256_set1_pd(-2.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d b = _mm256_loadu_pd(g12 + i);
    const __m256d d = _mm256_loadu_pd(g22 + i);
    // q = (g22² - 1 - g12² - 2i g12 g22) / (g12² + (g22 + 1)²)
    const __m256d bb = _mm256_mul_pd(b, b);
    const __m256d dp1 = _mm256_add_pd(d, one);
    const __m256d den = _mm256_fmadd_pd(dp1, dp1, bb);
    const __m256d re = _mm256_div_pd(_mm256_sub_pd(_mm256_fmsub_pd(d, d, one), bb), den);
    const __m256d im = _mm256_div_pd(_mm256_mul_pd(mtwo, _mm256_mul_pd(b, d)), den);
    const __m256d lo = _mm256_unpacklo_pd(re, im);  // re0 im0 re2 im2
    const __m256d hi = _mm256_unpackhi_pd(re, im);  // re1 im1 re3 im3
    _mm256_storeu_pd(dp(q + i), _mm256_permute2f128_pd(lo, hi, 0x20));
    _mm256_storeu_pd(dp(q + i + 2), _mm256_permute2f128_pd(lo, hi, 0x31));
  }
  for (; i < n; ++i) q[i] = cd(-g12[i], 1.0 - g22[i]) / cd(g12[i], -(g22[i] + 1.0));
}

void jacobian(const cd* fz, const cd* fzb, double* jac, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_loadu_pd(dp(fz + i));
    const __m256d a1 = _mm256_loadu_pd(dp(fz + i + 2));
    const __m256d b0 = _mm256_loadu_pd(dp(fzb + i));
    const __m256d b1 = _mm256_loadu_pd(dp(fzb + i + 2));
    const __m256d d0 = _mm256_fmsub_pd(a0, a0, _mm256_mul_pd(b0, b0));
    const __m256d d1 = _mm256_fmsub_pd(a1, a1, _mm256_mul_pd(b1, b1));
    const __m256d h = _mm256_hadd_pd(d0, d1);  // j0 j2 j1 j3
    _mm256_storeu_pd(jac + i, _mm256_permute4x64_pd(h, 0xD8));
  }
  for (; i < n; ++i) jac[i] = std::norm(fz[i]) - std::norm(fzb[i]);
}

}  // namespace

const KernelTable& avx2_kernels() noexcept {
  static const KernelTable table{Isa::Avx2,    complex_multiply, real_scale,
                                 squared_norm, squared_distance, max_abs,
                                 beltrami_from_metric, jacobian};
  return table;
}

}  // namespace isoband::simd::detail
