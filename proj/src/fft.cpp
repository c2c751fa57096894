#include "isoband/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <mutex>

#include "isoband/error.hpp"

namespace isoband {
namespace {

std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

fftw_complex* as_fftw(cd* p) { return reinterpret_cast<fftw_complex*>(p); }

}  // namespace

struct Fft2d::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Fft2d::Fft2d(int n1, int n2) : n1_(n1), n2_(n2), plans_(std::make_unique<Plans>()) {
  ComplexField scratch(static_cast<std::size_t>(n1) * n2);
  std::lock_guard lock(planner_mutex());
  plans_->fwd = fftw_plan_dft_2d(n1, n2, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                 FFTW_FORWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->bwd = fftw_plan_dft_2d(n1, n2, as_fftw(scratch.data()), as_fftw(scratch.data()),
                                 FFTW_BACKWARD, FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->fwd || !plans_->bwd) throw Error(ErrorKind::Numerical, "FFTW planning failed");
}

Fft2d::~Fft2d() = default;
Fft2d::Fft2d(Fft2d&&) noexcept = default;
Fft2d& Fft2d::operator=(Fft2d&&) noexcept = default;

void Fft2d::forward(std::span<const cd> in, std::span<cd> out) const {
  const std::size_t n = static_cast<std::size_t>(n1_) * n2_;
  if (in.size() != n || out.size() != n) throw Error(ErrorKind::Structural, "fft size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(plans_->fwd, as_fftw(out.data()), as_fftw(out.data()));
  const double scale = 1.0 / static_cast<double>(n);
  for (cd& v : out) v *= scale;
}

void Fft2d::backward(std::span<const cd> in, std::span<cd> out) const {
  const std::size_t n = static_cast<std::size_t>(n1_) * n2_;
  if (in.size() != n || out.size() != n) throw Error(ErrorKind::Structural, "fft size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(plans_->bwd, as_fftw(out.data()), as_fftw(out.data()));
}

ComplexField Fft2d::forward(std::span<const cd> in) const {
  ComplexField out(in.size());
  forward(in, out);
  return out;
}

ComplexField Fft2d::forward(std::span<const double> in) const {
  ComplexField out(in.begin(), in.end());
  forward(out, out);
  return out;
}

ComplexField Fft2d::backward(std::span<const cd> in) const {
  ComplexField out(in.size());
  backward(in, out);
  return out;
}

struct Fft1d::Plans {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  ~Plans() {
    std::lock_guard lock(planner_mutex());
    if (fwd) fftw_destroy_plan(fwd);
    if (bwd) fftw_destroy_plan(bwd);
  }
};

Fft1d::Fft1d(int n) : n_(n), plans_(std::make_unique<Plans>()) {
  ComplexField scratch(n);
  std::lock_guard lock(planner_mutex());
  plans_->fwd = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_FORWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  plans_->bwd = fftw_plan_dft_1d(n, as_fftw(scratch.data()), as_fftw(scratch.data()), FFTW_BACKWARD,
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!plans_->fwd || !plans_->bwd) throw Error(ErrorKind::Numerical, "FFTW planning failed");
}

Fft1d::~Fft1d() = default;
Fft1d::Fft1d(Fft1d&&) noexcept = default;
Fft1d& Fft1d::operator=(Fft1d&&) noexcept = default;

void Fft1d::forward(std::span<const cd> in, std::span<cd> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size())
    throw Error(ErrorKind::Structural, "fft size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(plans_->fwd, as_fftw(out.data()), as_fftw(out.data()));
  const double scale = 1.0 / n_;
  for (cd& v : out) v *= scale;
}

void Fft1d::backward(std::span<const cd> in, std::span<cd> out) const {
  if (in.size() != static_cast<std::size_t>(n_) || out.size() != in.size())
    throw Error(ErrorKind::Structural, "fft size mismatch");
  if (in.data() != out.data()) std::copy(in.begin(), in.end(), out.begin());
  fftw_execute_dft(plans_->bwd, as_fftw(out.data()), as_fftw(out.data()));
}

ComplexField resample_coefficients(std::span<const cd> coeffs, int m1, int m2, int n1, int n2) {
  if (coeffs.size() != static_cast<std::size_t>(m1) * m2)
    throw Error(ErrorKind::Structural, "coefficient table size mismatch");
  ComplexField out(static_cast<std::size_t>(n1) * n2, cd{});
  for (int a = 0; a < m1; ++a) {
    const int fa = signed_frequency(a, m1);
    if (fa < -n1 / 2 || fa >= n1 / 2) continue;
    for (int b = 0; b < m2; ++b) {
      const int fb = signed_frequency(b, m2);
      if (fb < -n2 / 2 || fb >= n2 / 2) continue;
      out[static_cast<std::size_t>(frequency_bin(fa, n1)) * n2 + frequency_bin(fb, n2)] =
          coeffs[static_cast<std::size_t>(a) * m2 + b];
    }
  }
  return out;
}

}  // namespace isoband
