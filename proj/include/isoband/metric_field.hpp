#pragma once

#include <string>
#include <vector>

#include "isoband/grid.hpp"
#include "isoband/trig_series.hpp"

namespace isoband {

/// Symmetric 2×2 matrix field on the torus; only (g11, g12, g22) are stored.
struct MetricField {
  TorusGrid grid;
  RealField g11, g12, g22;
  double c = 1.0;            // lower ellipticity bound
  double C = 1.0;            // upper ellipticity bound
  double detConstant = 1.0;

  /// Builds a field and infers c, C (extreme eigenvalues) and detConstant
  /// (mean determinant) from the samples.
  static MetricField from_samples(TorusGrid grid, RealField g11, RealField g12, RealField g22);
  static MetricField constant(TorusGrid grid, double g11, double g12, double g22);
};

struct BeltramiCoefficient {
  TorusGrid grid;
  ComplexField q;
  double supNorm = 0.0;

  static BeltramiCoefficient from_samples(TorusGrid grid, ComplexField q);
};

struct Violation {
  std::string rule;
  int i = 0;
  int j = 0;
  double value = 0.0;
};

struct ValidationReport {
  bool passed = true;
  std::vector<Violation> violations;
  // Worst residual per checked rule, whether or not it failed.
  std::vector<std::pair<std::string, double>> measurements;

  void add_violation(Violation v) {
    violations.push_back(std::move(v));
    passed = false;
  }
  double measurement(const std::string& rule) const;
};

/// Eigenvalues (ascending) of [[a, b], [b, d]].
std::pair<double, double> symmetric_eigenvalues(double a, double b, double d) noexcept;

ValidationReport validate_metric(const MetricField& G);

/// Divides by √detConstant. The factor that was divided out is written to
/// `scale` when non-null.
MetricField normalize_det(const MetricField& G, double* scale = nullptr);

BeltramiCoefficient metric_to_beltrami(const MetricField& G);
MetricField beltrami_to_metric(const BeltramiCoefficient& q);

/// Symmetric positive square root of a determinant-one metric.
MetricField sqrt_metric(const MetricField& G);

/// G = R(θ) diag(λ, 1/λ) R(θ)ᵀ with log λ and θ given as trigonometric series.
/// Determinant one by construction; mirror symmetric in x2 when log λ is even
/// and θ is odd in x2.
MetricField rotated_anisotropic_metric(const TorusGrid& grid, const TrigSeries& logLambda,
                                       const TrigSeries& theta);

}  // namespace isoband
