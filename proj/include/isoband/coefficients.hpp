#pragma once

#include <Eigen/Core>
#include <optional>
#include <vector>

#include "isoband/grid.hpp"
#include "isoband/isothermal_map.hpp"
#include "isoband/metric_field.hpp"

namespace isoband {

/// σ-weighted trace on the horizontal line x2 = y0; sigma sampled on the x1 grid.
struct DeltaLine {
  double y0 = 0.0;
  RealField sigma;
};

/// Trace term on a sampled curve: Σ_t sigma_t · arcWeight_t · |u(point_t)|²,
/// where arcWeight_t is the arc-length quadrature weight ds at point t.
struct DeltaCurve {
  std::vector<cd> points;
  RealField sigma;
  RealField arcWeights;
};

/// Coefficients of the periodic form
///   ∫ ω² ⟨G(D − a)u, (D − a)u⟩ + V|u|² + Σ ∫ σ|u|² dS,   Gram ∫ μ|u|²,
/// on the torus grid. Empty a1, a2, V mean zero; empty mu, omega mean one.
/// The metric is the constant A unless a variable field G is supplied.
struct CoefficientSet {
  TorusGrid grid;
  Eigen::Matrix2d A = Eigen::Matrix2d::Identity();
  std::optional<MetricField> G;
  RealField a1, a2, V, mu, omega;
  std::vector<DeltaLine> deltaLines;
  std::vector<DeltaCurve> deltaCurves;

  explicit CoefficientSet(TorusGrid g) : grid(g) {}

  /// Throws on size mismatches, non-positive μ or ω, or a non-positive-definite A.
  void validate() const;

  double metric(int row, int col, std::size_t s) const;
  double a(int component, std::size_t s) const;
};

}  // namespace isoband
