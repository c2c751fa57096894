#include "isoband/beltrami.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "isoband/error.hpp"
#include "isoband/fft.hpp"
#include "isoband/simd/kernels.hpp"

namespace isoband {
namespace {

constexpr double kDegenerateImKappa = 1e-8;

// Applies the Beurling symbol in place to a coefficient table, zeroing the
// mean mode.
void apply_beurling(ComplexField& coeffs, int n1, int n2) {
  for (int a = 0; a < n1; ++a) {
    const int m = signed_frequency(a, n1);
    for (int b = 0; b < n2; ++b) {
      const int n = signed_frequency(b, n2);
      cd& c = coeffs[static_cast<std::size_t>(a) * n2 + b];
      c = (m == 0 && n == 0) ? cd{} : c * beurling_multiplier(m, n);
    }
  }
}

class ProductStep {
 public:
  ProductStep(const BeltramiCoefficient& q, bool dealias)
      : n1_(q.grid.n1()), n2_(q.grid.n2()), fft_(n1_, n2_), dealias_(dealias) {
    if (dealias_) {
      p1_ = 3 * n1_ / 2;
      p2_ = 3 * n2_ / 2;
      padded_.emplace(p1_, p2_);
      qPadded_ = padded_->backward(resample_coefficients(fft_.forward(q.q), n1_, n2_, p1_, p2_));
    } else {
      qPadded_ = q.q;
    }
  }

  // Returns q·w sampled on the base grid, given w's coefficient table.
  ComplexField multiply(const ComplexField& wHat) const {
    if (!dealias_) {
      ComplexField w = fft_.backward(wHat);
      simd::complex_multiply(qPadded_, w, w);
      return w;
    }
    ComplexField w = padded_->backward(resample_coefficients(wHat, n1_, n2_, p1_, p2_));
    simd::complex_multiply(qPadded_, w, w);
    return fft_.backward(resample_coefficients(padded_->forward(w), p1_, p2_, n1_, n2_));
  }

  const Fft2d& fft() const { return fft_; }

 private:
  int n1_, n2_, p1_ = 0, p2_ = 0;
  Fft2d fft_;
  std::optional<Fft2d> padded_;
  ComplexField qPadded_;
  bool dealias_;
};

}  // namespace

cd beurling_multiplier(int m, int n) {
  if (m == 0 && n == 0) throw Error(ErrorKind::Domain, "Beurling symbol is undefined at the zero mode");
  return cd(m, -n) / cd(m, n);
}

IsothermalMap solve_periodic_beltrami(const BeltramiCoefficient& q, const SolverConfig& cfg) {
  if (cfg.maxIterations < 1 || !(cfg.tolerance > 0.0))
    throw Error(ErrorKind::Config, "solver needs maxIterations >= 1 and tolerance > 0");
  if (q.q.size() != q.grid.size())
    throw Error(ErrorKind::Structural, "Beltrami coefficient does not match the grid size");
  if (!(q.supNorm < 1.0))
    throw Error(ErrorKind::DegenerateEllipticity, "sup |q| must be below 1");

  const int n1 = q.grid.n1(), n2 = q.grid.n2();
  const std::size_t size = q.grid.size();
  ProductStep step(q, cfg.dealias);
  const Fft2d& fft = step.fft();

  IsothermalMap map{q.grid};
  // h = ∂_z̄ f on the grid; the iteration starts from f = z, i.e. h = q.
  ComplexField h = q.q;
  ComplexField hHat, wHat, qw;
  double residual = 0.0;
  for (int it = 0;; ++it) {
    hHat = fft.forward(h);
    const cd beta = hHat[0];
    wHat = hHat;
    apply_beurling(wHat, n1, n2);
    wHat[0] = 1.0 - beta;
    qw = step.multiply(wHat);
    const ComplexField w = fft.backward(wHat);
    residual = std::sqrt(simd::squared_distance(h, qw) / simd::squared_norm(w));
    map.residualHistory.push_back(residual);
    map.iterations = it;
    if (residual < cfg.tolerance) break;
    if (it + 1 >= cfg.maxIterations || !std::isfinite(residual))
      throw IterationError("Beltrami iteration did not reach tolerance after " +
                               std::to_string(it + 1) + " iterations (residual " +
                               std::to_string(residual) + ")",
                           residual);
    h.swap(qw);
  }

  map.beta = hHat[0];
  map.alpha = 1.0 - map.beta;
  map.kappa = cd(0.0, kTwoPi) * (map.alpha - map.beta);
  map.residualL2 = residual;
  map.pHat.assign(size, cd{});
  for (int a = 0; a < n1; ++a) {
    const int m = signed_frequency(a, n1);
    for (int b = 0; b < n2; ++b) {
      const int n = signed_frequency(b, n2);
      if (m == 0 && n == 0) continue;
      const std::size_t s = static_cast<std::size_t>(a) * n2 + b;
      map.pHat[s] = hHat[s] / (cd(0.0, 0.5) * cd(m, n));
    }
  }
  if (std::abs(map.kappa.imag()) < kDegenerateImKappa)
    throw Error(ErrorKind::DegenerateLattice, "lattice vector kappa has vanishing imaginary part");
  return map;
}

cd kappa_of(const IsothermalMap& map) noexcept {
  return cd(0.0, kTwoPi) * (map.alpha - map.beta);
}

ComplexField dz_coefficients(const IsothermalMap& map) {
  const int n1 = map.grid.n1(), n2 = map.grid.n2();
  ComplexField out(map.pHat.size());
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const std::size_t s = static_cast<std::size_t>(a) * n2 + b;
      out[s] = cd(0.0, 0.5) * cd(signed_frequency(a, n1), -signed_frequency(b, n2)) * map.pHat[s];
    }
  return out;
}

ComplexField dzbar_coefficients(const IsothermalMap& map) {
  const int n1 = map.grid.n1(), n2 = map.grid.n2();
  ComplexField out(map.pHat.size());
  for (int a = 0; a < n1; ++a)
    for (int b = 0; b < n2; ++b) {
      const std::size_t s = static_cast<std::size_t>(a) * n2 + b;
      out[s] = cd(0.0, 0.5) * cd(signed_frequency(a, n1), signed_frequency(b, n2)) * map.pHat[s];
    }
  return out;
}

}  // namespace isoband
