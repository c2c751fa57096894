#include "isoband/metric_field.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "isoband/error.hpp"
#include "isoband/simd/kernels.hpp"

namespace isoband {
namespace {

constexpr double kDetRelTol = 1e-10;
constexpr double kSupNormLimit = 1.0 - 1e-12;

void require_same_size(const MetricField& G) {
  const std::size_t n = G.grid.size();
  if (G.g11.size() != n || G.g12.size() != n || G.g22.size() != n)
    throw Error(ErrorKind::Structural, "metric components do not match the grid size");
}

void require_unit_det(const MetricField& G) {
  for (std::size_t s = 0; s < G.grid.size(); ++s) {
    const double det = G.g11[s] * G.g22[s] - G.g12[s] * G.g12[s];
    if (!(std::abs(det - 1.0) <= 1e-8))
      throw Error(ErrorKind::InvalidMetric,
                  "metric must have unit determinant (got " + std::to_string(det) + ")");
  }
}

}  // namespace

std::pair<double, double> symmetric_eigenvalues(double a, double b, double d) noexcept {
  const double mean = 0.5 * (a + d);
  const double radius = std::hypot(0.5 * (a - d), b);
  return {mean - radius, mean + radius};
}

MetricField MetricField::from_samples(TorusGrid grid, RealField g11, RealField g12, RealField g22) {
  MetricField G{grid, std::move(g11), std::move(g12), std::move(g22)};
  require_same_size(G);
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  double detSum = 0.0;
  for (std::size_t s = 0; s < grid.size(); ++s) {
    auto [l1, l2] = symmetric_eigenvalues(G.g11[s], G.g12[s], G.g22[s]);
    lo = std::min(lo, l1);
    hi = std::max(hi, l2);
    detSum += G.g11[s] * G.g22[s] - G.g12[s] * G.g12[s];
  }
  G.c = lo;
  G.C = hi;
  G.detConstant = detSum / static_cast<double>(grid.size());
  return G;
}

MetricField MetricField::constant(TorusGrid grid, double g11, double g12, double g22) {
  const std::size_t n = grid.size();
  return from_samples(grid, RealField(n, g11), RealField(n, g12), RealField(n, g22));
}

BeltramiCoefficient BeltramiCoefficient::from_samples(TorusGrid grid, ComplexField q) {
  if (q.size() != grid.size())
    throw Error(ErrorKind::Structural, "Beltrami coefficient does not match the grid size");
  const double sup = simd::max_abs(q);
  return BeltramiCoefficient{grid, std::move(q), sup};
}

double ValidationReport::measurement(const std::string& rule) const {
  for (const auto& [name, value] : measurements)
    if (name == rule) return value;
  return std::numeric_limits<double>::quiet_NaN();
}

ValidationReport validate_metric(const MetricField& G) {
  require_same_size(G);
  ValidationReport report;
  const int n1 = G.grid.n1();
  const int n2 = G.grid.n2();
  const double detTol = kDetRelTol * std::max(1.0, std::abs(G.detConstant));

  Violation worstEllipticity{"ellipticity", 0, 0, 0.0};
  double ellipticityExcess = 0.0;
  Violation worstDet{"det-constancy", 0, 0, 0.0};
  double detExcess = 0.0;
  Violation worstFinite{"finite", 0, 0, 0.0};
  bool nonFinite = false;

  for (int i = 0; i < n1; ++i)
    for (int j = 0; j < n2; ++j) {
      const std::size_t s = G.grid.index(i, j);
      const double a = G.g11[s], b = G.g12[s], d = G.g22[s];
      if (!std::isfinite(a) || !std::isfinite(b) || !std::isfinite(d)) {
        if (!nonFinite) worstFinite = {"finite", i, j, std::numeric_limits<double>::quiet_NaN()};
        nonFinite = true;
        continue;
      }
      auto [l1, l2] = symmetric_eigenvalues(a, b, d);
      const double excess = std::max(G.c - l1, l2 - G.C);
      if (excess > ellipticityExcess) {
        ellipticityExcess = excess;
        worstEllipticity = {"ellipticity", i, j, excess > G.c - l1 ? l1 : l2};
      }
      const double dev = std::abs(a * d - b * b - G.detConstant);
      if (dev > detExcess) {
        detExcess = dev;
        worstDet = {"det-constancy", i, j, a * d - b * b};
      }
    }

  const double ellipticityTol = 1e-12 * std::max(1.0, G.C);
  report.measurements.emplace_back("ellipticity", ellipticityExcess);
  report.measurements.emplace_back("det-constancy", detExcess);
  if (nonFinite) report.add_violation(worstFinite);
  if (!(G.c > 0.0)) report.add_violation({"positivity", 0, 0, G.c});
  if (ellipticityExcess > ellipticityTol) report.add_violation(worstEllipticity);
  if (detExcess > detTol) report.add_violation(worstDet);
  return report;
}

MetricField normalize_det(const MetricField& G, double* scale) {
  require_same_size(G);
  if (!(G.detConstant > 0.0))
    throw Error(ErrorKind::InvalidMetric, "metric determinant must be positive");
  const double root = std::sqrt(G.detConstant);
  const double inv = 1.0 / root;
  RealField g11(G.g11), g12(G.g12), g22(G.g22);
  for (std::size_t s = 0; s < g11.size(); ++s) {
    g11[s] *= inv;
    g12[s] *= inv;
    g22[s] *= inv;
  }
  if (scale) *scale = root;
  MetricField out{G.grid, std::move(g11), std::move(g12), std::move(g22),
                  G.c * inv, G.C * inv, 1.0};
  return out;
}

BeltramiCoefficient metric_to_beltrami(const MetricField& G) {
  require_same_size(G);
  require_unit_det(G);
  ComplexField q(G.grid.size());
  simd::active().beltrami_from_metric(G.g12.data(), G.g22.data(), q.data(), q.size());
  BeltramiCoefficient out = BeltramiCoefficient::from_samples(G.grid, std::move(q));
  if (out.supNorm >= kSupNormLimit)
    throw Error(ErrorKind::DegenerateEllipticity,
                "sup |q| = " + std::to_string(out.supNorm) + " is too close to 1");
  return out;
}

MetricField beltrami_to_metric(const BeltramiCoefficient& q) {
  if (q.q.size() != q.grid.size())
    throw Error(ErrorKind::Structural, "Beltrami coefficient does not match the grid size");
  const std::size_t n = q.grid.size();
  RealField g11(n), g12(n), g22(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double r2 = std::norm(q.q[s]);
    if (!(r2 < 1.0))
      throw Error(ErrorKind::DegenerateEllipticity, "|q| >= 1 has no elliptic preimage");
    const double denom = 1.0 - r2;
    g12[s] = -2.0 * q.q[s].imag() / denom;
    g22[s] = std::norm(1.0 + q.q[s]) / denom;
    g11[s] = (1.0 + g12[s] * g12[s]) / g22[s];
  }
  return MetricField::from_samples(q.grid, std::move(g11), std::move(g12), std::move(g22));
}

MetricField sqrt_metric(const MetricField& G) {
  require_same_size(G);
  const std::size_t n = G.grid.size();
  RealField f11(n), f12(n), f22(n);
  for (std::size_t s = 0; s < n; ++s) {
    const double a = G.g11[s], b = G.g12[s], d = G.g22[s];
    const double det = a * d - b * b;
    if (!(a > 0.0) || !(det > 0.0))
      throw Error(ErrorKind::InvalidMetric, "metric sample is not positive definite");
    // For a positive 2×2 matrix, √G = (G + √det·I) / √(tr G + 2√det).
    const double rootDet = std::sqrt(det);
    const double t = 1.0 / std::sqrt(a + d + 2.0 * rootDet);
    f11[s] = (a + rootDet) * t;
    f12[s] = b * t;
    f22[s] = (d + rootDet) * t;
  }
  return MetricField::from_samples(G.grid, std::move(f11), std::move(f12), std::move(f22));
}

MetricField rotated_anisotropic_metric(const TorusGrid& grid, const TrigSeries& logLambda,
                                       const TrigSeries& theta) {
  RealField g11(grid.size()), g12(grid.size()), g22(grid.size());
  for (int i = 0; i < grid.n1(); ++i)
    for (int j = 0; j < grid.n2(); ++j) {
      const double x1 = grid.x1(i), x2 = grid.x2(j);
      const double lam = std::exp(evaluate(logLambda, x1, x2));
      const double th = evaluate(theta, x1, x2);
      const double c = std::cos(th), s = std::sin(th);
      const std::size_t k = grid.index(i, j);
      g11[k] = lam * c * c + s * s / lam;
      g12[k] = (lam - 1.0 / lam) * c * s;
      g22[k] = lam * s * s + c * c / lam;
    }
  return MetricField::from_samples(grid, std::move(g11), std::move(g12), std::move(g22));
}

}  // namespace isoband
