#include "isoband/interpolation.hpp"

#include "isoband/error.hpp"
#include "isoband/fft.hpp"

namespace isoband {

PeriodicInterpolator::PeriodicInterpolator(const TorusGrid& grid, const RealField& field, int oversample) {
  if (oversample < 1) throw Error(ErrorKind::Config, "oversampling factor must be >= 1");
  if (field.size() != grid.size()) throw Error(ErrorKind::Structural, "field does not match grid");
  t1_ = grid.n1() * oversample;
  t2_ = grid.n2() * oversample;
  const ComplexField hat = Fft2d(grid.n1(), grid.n2()).forward(std::span<const double>(field));
  const ComplexField fine =
      Fft2d(t1_, t2_).backward(resample_coefficients(hat, grid.n1(), grid.n2(), t1_, t2_));
  table_.resize(fine.size());
  for (std::size_t s = 0; s < fine.size(); ++s) table_[s] = fine[s].real();
}

double PeriodicInterpolator::operator()(cd x) const noexcept {
  const double u = wrap_periodic(x.real()) / kTwoPi * t1_;
  const double v = wrap_periodic(x.imag()) / kTwoPi * t2_;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const auto wu = lagrange4(u - i0);
  const auto wv = lagrange4(v - j0);
  double out = 0.0;
  for (int a = 0; a < 4; ++a) {
    const int i = ((i0 + a - 1) % t1_ + t1_) % t1_;
    const std::size_t row = static_cast<std::size_t>(i) * t2_;
    double r = 0.0;
    for (int b = 0; b < 4; ++b) r += wv[b] * table_[row + ((j0 + b - 1) % t2_ + t2_) % t2_];
    out += wu[a] * r;
  }
  return out;
}

RealField upsample_periodic(const RealField& samples, int factor) {
  const int n = static_cast<int>(samples.size());
  if (n == 0 || factor < 1) throw Error(ErrorKind::Config, "upsampling needs samples and a factor >= 1");
  if (factor == 1) return samples;
  const int m = n * factor;
  ComplexField in(samples.begin(), samples.end()), hat(n), wide(m, cd{}), out(m);
  Fft1d(n).forward(in, hat);
  for (int a = 0; a < n; ++a) {
    const int f = signed_frequency(a, n);
    if (2 * f == -n) {
      // Split the unpaired Nyquist coefficient so the interpolant stays real.
      wide[frequency_bin(f, m)] += 0.5 * hat[a];
      wide[frequency_bin(-f, m)] += 0.5 * hat[a];
    } else {
      wide[frequency_bin(f, m)] = hat[a];
    }
  }
  Fft1d(m).backward(wide, out);
  RealField result(m);
  for (int s = 0; s < m; ++s) result[s] = out[s].real();
  return result;
}

}  // namespace isoband
