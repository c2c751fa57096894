#pragma once

#include <Eigen/Core>
#include <Eigen/LU>
#include <mutex>
#include <span>
#include <vector>

#include "isoband/beltrami.hpp"
#include "isoband/metric_field.hpp"

namespace isoband {

/// Value and complex derivatives of the map at one point.
struct MapJet {
  cd f;
  cd fz;   // ∂_z f
  cd fzb;  // ∂_z̄ f
};

/// Real 2×2 Jacobian matrix from (∂_z f, ∂_z̄ f); rows are ∇f1ᵀ and ∇f2ᵀ.
Eigen::Matrix2d jacobian_from_derivatives(cd fz, cd fzb) noexcept;

/// Evaluates a solved map at arbitrary points, either by direct Fourier
/// summation or from oversampled tables with tensor 4-point Lagrange
/// interpolation.
class MapEvaluator {
 public:
  static constexpr std::size_t kDirectThreshold = 1000;

  explicit MapEvaluator(const IsothermalMap& map, int oversample = 4);

  const IsothermalMap& map() const noexcept { return map_; }

  MapJet jet(cd z) const;
  MapJet jet_interpolated(cd z) const;
  cd evaluate(cd z) const { return jet(z).f; }

  /// Direct summation below kDirectThreshold points, interpolation above.
  std::vector<cd> evaluate_many(std::span<const cd> z) const;

  /// Newton solve of f(z) = w seeded with the inverse of the linear part.
  /// Uses interpolated evaluation when `interpolated` is set.
  cd invert(cd w, double tol, bool interpolated = false) const;

 private:
  void build_tables() const;

  IsothermalMap map_;
  ComplexField dzHat_, dzbHat_;
  cd p0_;
  int oversample_;
  mutable std::once_flag tablesOnce_;
  mutable int t1_ = 0, t2_ = 0;
  mutable ComplexField tableP_, tableDz_, tableDzb_;
};

cd evaluate(const IsothermalMap& map, cd z);

struct JacobianAtPoint {
  Eigen::Matrix2d Df;
  double J;
};

JacobianAtPoint jacobian_matrix(const IsothermalMap& map, cd z);

cd invert(const IsothermalMap& map, cd w, double tol = 1e-12);

struct RenormalizedMap {
  IsothermalMap base;
  Eigen::Matrix2d R;
  Eigen::Matrix2d A;
  // Worst |g(x + 2πn) − g(x) − 2πn| over the checked samples and n ∈ {e1, e2}.
  double periodicityResidual = 0.0;
};

RenormalizedMap renormalize(const IsothermalMap& map);

/// Checks the five first-order identities linking the map and the metric
/// on `verifyGrid`, onto which map and metric are carried by trigonometric
/// interpolation. Measurements are named beltrami, laplace2, orthog, jacob
/// and changeg; a rule fails when its worst residual exceeds `tol`.
ValidationReport verify_identities(const IsothermalMap& map, const MetricField& G,
                                   const TorusGrid& verifyGrid, double tol = 1e-6);

/// Map derivatives sampled on an arbitrary torus grid via trigonometric
/// interpolation of the solved coefficient tables.
struct SampledDerivatives {
  TorusGrid grid;
  ComplexField fz, fzb;
};
SampledDerivatives sample_derivatives(const IsothermalMap& map, const TorusGrid& grid);

/// Trigonometric interpolation of a real field between torus grids.
RealField resample_field(const RealField& field, const TorusGrid& from, const TorusGrid& to);

}  // namespace isoband
