#include "isoband/isothermal_map.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "isoband/error.hpp"
#include "isoband/fft.hpp"
#include "isoband/interpolation.hpp"

namespace isoband {
namespace {

constexpr int kNewtonMaxIterations = 100;
constexpr int kMaxStepHalvings = 40;

// Phases e^{i k x} for the signed frequencies of an n-point grid.
std::vector<cd> phases(double x, int n) {
  std::vector<cd> e(n);
  for (int a = 0; a < n; ++a) e[a] = std::polar(1.0, signed_frequency(a, n) * x);
  return e;
}

cd linear_inverse(cd alpha, cd beta, cd w) {
  // αz + βz̄ = w  ⇒  z = (ᾱw − βw̄) / (|α|² − |β|²)
  return (std::conj(alpha) * w - beta * std::conj(w)) / (std::norm(alpha) - std::norm(beta));
}

}  // namespace

Eigen::Matrix2d jacobian_from_derivatives(cd fz, cd fzb) noexcept {
  const cd s = fz + fzb, d = fz - fzb;
  Eigen::Matrix2d Df;
  Df << s.real(), -d.imag(), s.imag(), d.real();
  return Df;
}

MapEvaluator::MapEvaluator(const IsothermalMap& map, int oversample)
    : map_(map), dzHat_(dz_coefficients(map)), dzbHat_(dzbar_coefficients(map)),
      oversample_(oversample) {
  if (oversample_ < 1) throw Error(ErrorKind::Config, "oversampling factor must be >= 1");
  p0_ = 0.0;
  for (cd c : map_.pHat) p0_ += c;
}

MapJet MapEvaluator::jet(cd z) const {
  const int n1 = map_.grid.n1(), n2 = map_.grid.n2();
  const auto e1 = phases(z.real(), n1);
  const auto e2 = phases(z.imag(), n2);
  cd p{}, pz{}, pzb{};
  for (int a = 0; a < n1; ++a) {
    cd rp{}, rz{}, rzb{};
    const std::size_t row = static_cast<std::size_t>(a) * n2;
    for (int b = 0; b < n2; ++b) {
      rp += map_.pHat[row + b] * e2[b];
      rz += dzHat_[row + b] * e2[b];
      rzb += dzbHat_[row + b] * e2[b];
    }
    p += e1[a] * rp;
    pz += e1[a] * rz;
    pzb += e1[a] * rzb;
  }
  return {map_.alpha * z + map_.beta * std::conj(z) + p - p0_, map_.alpha + pz, map_.beta + pzb};
}

void MapEvaluator::build_tables() const {
  std::call_once(tablesOnce_, [this] {
    const int n1 = map_.grid.n1(), n2 = map_.grid.n2();
    t1_ = oversample_ * n1;
    t2_ = oversample_ * n2;
    Fft2d fft(t1_, t2_);
    tableP_ = fft.backward(resample_coefficients(map_.pHat, n1, n2, t1_, t2_));
    tableDz_ = fft.backward(resample_coefficients(dzHat_, n1, n2, t1_, t2_));
    tableDzb_ = fft.backward(resample_coefficients(dzbHat_, n1, n2, t1_, t2_));
  });
}

MapJet MapEvaluator::jet_interpolated(cd z) const {
  build_tables();
  const double u = wrap_periodic(z.real()) / kTwoPi * t1_;
  const double v = wrap_periodic(z.imag()) / kTwoPi * t2_;
  const int i0 = static_cast<int>(std::floor(u));
  const int j0 = static_cast<int>(std::floor(v));
  const auto wu = lagrange4(u - i0);
  const auto wv = lagrange4(v - j0);
  cd p{}, pz{}, pzb{};
  for (int a = 0; a < 4; ++a) {
    const int i = ((i0 + a - 1) % t1_ + t1_) % t1_;
    const std::size_t row = static_cast<std::size_t>(i) * t2_;
    cd rp{}, rz{}, rzb{};
    for (int b = 0; b < 4; ++b) {
      const int j = ((j0 + b - 1) % t2_ + t2_) % t2_;
      rp += wv[b] * tableP_[row + j];
      rz += wv[b] * tableDz_[row + j];
      rzb += wv[b] * tableDzb_[row + j];
    }
    p += wu[a] * rp;
    pz += wu[a] * rz;
    pzb += wu[a] * rzb;
  }
  return {map_.alpha * z + map_.beta * std::conj(z) + p - p0_, map_.alpha + pz, map_.beta + pzb};
}

std::vector<cd> MapEvaluator::evaluate_many(std::span<const cd> z) const {
  std::vector<cd> out(z.size());
  const bool direct = z.size() < kDirectThreshold;
  for (std::size_t k = 0; k < z.size(); ++k) out[k] = direct ? jet(z[k]).f : jet_interpolated(z[k]).f;
  return out;
}

cd MapEvaluator::invert(cd w, double tol, bool interpolated) const {
  auto eval = [&](cd z) { return interpolated ? jet_interpolated(z) : jet(z); };
  cd z = linear_inverse(map_.alpha, map_.beta, w);
  MapJet j = eval(z);
  double res = std::abs(j.f - w);
  for (int it = 0; it < kNewtonMaxIterations && !(res < tol); ++it) {
    const double J = std::norm(j.fz) - std::norm(j.fzb);
    if (!(J > 0.0))
      throw Error(ErrorKind::Inversion, "non-positive Jacobian during Newton inversion");
    const cd r = w - j.f;
    const cd step = (std::conj(j.fz) * r - j.fzb * std::conj(r)) / J;
    double scale = 1.0;
    bool improved = false;
    for (int h = 0; h < kMaxStepHalvings; ++h, scale *= 0.5) {
      const cd trial = z + scale * step;
      const MapJet tj = eval(trial);
      const double tr = std::abs(tj.f - w);
      if (tr < res) {
        z = trial;
        j = tj;
        res = tr;
        improved = true;
        break;
      }
    }
    if (!improved) break;
  }
  if (!(res < tol))
    throw Error(ErrorKind::Inversion, "Newton inversion stalled at residual " + std::to_string(res) +
                                          " for w = (" + std::to_string(w.real()) + ", " +
                                          std::to_string(w.imag()) + ")");
  return z;
}

cd evaluate(const IsothermalMap& map, cd z) { return MapEvaluator(map).evaluate(z); }

JacobianAtPoint jacobian_matrix(const IsothermalMap& map, cd z) {
  const MapJet j = MapEvaluator(map).jet(z);
  const double J = std::norm(j.fz) - std::norm(j.fzb);
  if (!(J > 0.0))
    throw Error(ErrorKind::Orientation, "Jacobian is not positive at the requested point");
  return {jacobian_from_derivatives(j.fz, j.fzb), J};
}

cd invert(const IsothermalMap& map, cd w, double tol) { return MapEvaluator(map).invert(w, tol); }

RenormalizedMap renormalize(const IsothermalMap& map) {
  const cd kappa = map.kappa;
  if (std::abs(kappa.imag()) < 1e-8)
    throw Error(ErrorKind::DegenerateLattice, "lattice vector kappa has vanishing imaginary part");
  RenormalizedMap out{map};
  out.R << 1.0, -kappa.real() / kappa.imag(), 0.0, kTwoPi / kappa.imag();
  out.A = out.R * out.R.transpose() / out.R.determinant();

  const MapEvaluator ev(map);
  auto g = [&](cd z) {
    const cd f = ev.evaluate(z);
    const Eigen::Vector2d y = out.R * Eigen::Vector2d(f.real(), f.imag());
    return cd(y(0), y(1));
  };
  const int n1 = map.grid.n1(), n2 = map.grid.n2();
  const int stride1 = std::max(1, n1 / 8), stride2 = std::max(1, n2 / 8);
  double worst = 0.0;
  for (int i = 0; i < n1; i += stride1)
    for (int j = 0; j < n2; j += stride2) {
      const cd x(map.grid.x1(i) + 0.37, map.grid.x2(j) + 0.21);
      const cd gx = g(x);
      worst = std::max(worst, std::abs(g(x + kTwoPi) - gx - kTwoPi));
      worst = std::max(worst, std::abs(g(x + cd(0, kTwoPi)) - gx - cd(0, kTwoPi)));
    }
  out.periodicityResidual = worst;
  return out;
}

RealField resample_field(const RealField& field, const TorusGrid& from, const TorusGrid& to) {
  if (field.size() != from.size()) throw Error(ErrorKind::Structural, "field does not match grid");
  if (from == to) return field;
  Fft2d src(from.n1(), from.n2()), dst(to.n1(), to.n2());
  const ComplexField hat = src.forward(std::span<const double>(field));
  const ComplexField vals =
      dst.backward(resample_coefficients(hat, from.n1(), from.n2(), to.n1(), to.n2()));
  RealField out(vals.size());
  for (std::size_t s = 0; s < vals.size(); ++s) out[s] = vals[s].real();
  return out;
}

SampledDerivatives sample_derivatives(const IsothermalMap& map, const TorusGrid& grid) {
  const int n1 = map.grid.n1(), n2 = map.grid.n2();
  Fft2d fft(grid.n1(), grid.n2());
  ComplexField fz = fft.backward(resample_coefficients(dz_coefficients(map), n1, n2, grid.n1(), grid.n2()));
  ComplexField fzb =
      fft.backward(resample_coefficients(dzbar_coefficients(map), n1, n2, grid.n1(), grid.n2()));
  for (auto& v : fz) v += map.alpha;
  for (auto& v : fzb) v += map.beta;
  return {grid, std::move(fz), std::move(fzb)};
}

ValidationReport verify_identities(const IsothermalMap& map, const MetricField& G,
                                   const TorusGrid& verifyGrid, double tol) {
  const SampledDerivatives d = sample_derivatives(map, verifyGrid);
  const RealField g11 = resample_field(G.g11, G.grid, verifyGrid);
  const RealField g12 = resample_field(G.g12, G.grid, verifyGrid);
  const RealField g22 = resample_field(G.g22, G.grid, verifyGrid);
  const MetricField Gv = MetricField::from_samples(verifyGrid, g11, g12, g22);
  const MetricField F = sqrt_metric(Gv);

  Eigen::Matrix2d rot;
  rot << 0.0, -1.0, 1.0, 0.0;
  const char* names[5] = {"beltrami", "laplace2", "orthog", "jacob", "changeg"};
  double worst[5] = {0, 0, 0, 0, 0};
  int where[5][2] = {};
  for (int i = 0; i < verifyGrid.n1(); ++i)
    for (int j = 0; j < verifyGrid.n2(); ++j) {
      const std::size_t s = verifyGrid.index(i, j);
      const Eigen::Matrix2d Df = jacobian_from_derivatives(d.fz[s], d.fzb[s]);
      const Eigen::Vector2d grad1 = Df.row(0).transpose(), grad2 = Df.row(1).transpose();
      Eigen::Matrix2d Gs, Fs;
      Gs << Gv.g11[s], Gv.g12[s], Gv.g12[s], Gv.g22[s];
      Fs << F.g11[s], F.g12[s], F.g12[s], F.g22[s];
      const double J = Df.determinant();
      const double r[5] = {
          (grad2 - rot * Gs * grad1).cwiseAbs().maxCoeff(),
          (grad1 + rot * Gs * grad2).cwiseAbs().maxCoeff(),
          std::abs((Fs * grad1).dot(Fs * grad2)),
          std::max(std::abs(J - (Fs * grad1).squaredNorm()), std::abs(J - (Fs * grad2).squaredNorm())),
          (Df * Gs * Df.transpose() / J - Eigen::Matrix2d::Identity()).cwiseAbs().maxCoeff()};
      for (int k = 0; k < 5; ++k)
        if (!(r[k] <= worst[k])) {
          worst[k] = r[k];
          where[k][0] = i;
          where[k][1] = j;
        }
    }
  ValidationReport report;
  for (int k = 0; k < 5; ++k) {
    report.measurements.emplace_back(names[k], worst[k]);
    if (!(worst[k] <= tol)) report.add_violation({names[k], where[k][0], where[k][1], worst[k]});
  }
  return report;
}

}  // namespace isoband
