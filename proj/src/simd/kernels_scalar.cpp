// Reference kernels. These define the semantics the vector variants are
// tested against, so they are written for clarity, not speed.

#include <algorithm>
#include <cmath>

#include "kernels_impl.hpp"

namespace isoband::simd::detail {
namespace {

void complex_multiply(const cd* a, const cd* b, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = a[i] * b[i];
}

void real_scale(const double* s, const cd* a, cd* out, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) out[i] = s[i] * a[i];
}

double squared_norm(const cd* a, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::norm(a[i]);
  return sum;
}

double squared_distance(const cd* a, const cd* b, std::size_t n) {
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) sum += std::norm(a[i] - b[i]);
  return sum;
}

double max_abs(const cd* a, std::size_t n) {
  double m = 0.0;
  for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(a[i]));
  return m;
}

void beltrami_from_metric(const double* g12, const double* g22, cd* q, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    q[i] = cd(-g12[i], 1.0 - g22[i]) / cd(g12[i], -(g22[i] + 1.0));
}

void jacobian(const cd* fz, const cd* fzb, double* jac, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) jac[i] = std::norm(fz[i]) - std::norm(fzb[i]);
}

}  // namespace

const KernelTable& scalar_kernels() noexcept {
  static const KernelTable table{Isa::Scalar,   complex_multiply, real_scale,
                                 squared_norm,  squared_distance, max_abs,
                                 beltrami_from_metric, jacobian};
  return table;
}

}  // namespace isoband::simd::detail
