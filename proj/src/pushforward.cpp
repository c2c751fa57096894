#include "isoband/pushforward.hpp"

#include <Eigen/LU>
#include <algorithm>
#include <optional>
#include <string>

#include "isoband/error.hpp"
#include "isoband/interpolation.hpp"
#include "isoband/parallel.hpp"

namespace isoband {
namespace {

int table_factor(const PushforwardOptions& options, const TorusGrid& grid) {
  if (options.oversample > 0) return options.oversample;
  return std::max(4, 1024 / std::min(grid.n1(), grid.n2()));
}

cd apply(const Eigen::Matrix2d& M, cd v) {
  const Eigen::Vector2d r = M * Eigen::Vector2d(v.real(), v.imag());
  return {r(0), r(1)};
}

}  // namespace

CompositeJet composite_jet(const RenormalizedMap& rmap, const MapJet& jet) noexcept {
  const Eigen::Matrix2d Dg = rmap.R * jacobian_from_derivatives(jet.fz, jet.fzb);
  return {apply(rmap.R, jet.f), Dg, Dg.determinant()};
}

CoefficientSet pushforward(const RenormalizedMap& rmap, const CoefficientSet& src, const PushforwardOptions& options) {
  src.validate();
  if (!src.omega.empty())
    throw Error(ErrorKind::Config, "pushforward expects omega = 1; apply the sandwich reduction first");
  if (!src.deltaCurves.empty())
    throw Error(ErrorKind::Config, "pushforward transports horizontal delta lines only");
  const TorusGrid& grid = src.grid;
  if (!(rmap.base.grid == grid)) throw Error(ErrorKind::Structural, "map and coefficients live on different grids");

  const int factor = table_factor(options, grid);
  const MapEvaluator evaluator(rmap.base, factor);
  const Eigen::Matrix2d Rinv = rmap.R.inverse();
  auto interpolator = [&](const RealField& f) {
    std::optional<PeriodicInterpolator> out;
    if (!f.empty()) out.emplace(grid, f, factor);
    return out;
  };
  const auto a1 = interpolator(src.a1), a2 = interpolator(src.a2), V = interpolator(src.V), mu = interpolator(src.mu);

  CoefficientSet out(grid);
  out.A = rmap.A;
  const bool magnetic = a1 || a2;
  if (magnetic) {
    out.a1.assign(grid.size(), 0.0);
    out.a2.assign(grid.size(), 0.0);
  }
  if (V) out.V.assign(grid.size(), 0.0);
  out.mu.assign(grid.size(), 0.0);

  parallel_for(static_cast<std::size_t>(grid.n1()), options.jobs, [&](std::size_t row) {
    const int i = static_cast<int>(row);
    for (int j = 0; j < grid.n2(); ++j) {
      const std::size_t s = grid.index(i, j);
      const cd w = apply(Rinv, cd(grid.x1(i), grid.x2(j)));
      cd x;
      try {
        x = evaluator.invert(w, options.newtonTolerance, true);
      } catch (const Error& e) {
        throw Error(ErrorKind::Pushforward, "pushforward: target sample (" + std::to_string(i) + ", " +
                                              std::to_string(j) + "): " + e.what());
      }
      const CompositeJet cj = composite_jet(rmap, evaluator.jet_interpolated(x));
      if (!(cj.J > 0.0))
        throw Error(ErrorKind::Orientation, "pushforward: non-positive Jacobian at target sample (" +
                                                std::to_string(i) + ", " + std::to_string(j) + ")");
      if (magnetic) {
        const Eigen::Vector2d a(a1 ? (*a1)(x) : 0.0, a2 ? (*a2)(x) : 0.0);
        const Eigen::Vector2d at = cj.Dg.transpose().partialPivLu().solve(a);
        out.a1[s] = at(0);
        out.a2[s] = at(1);
      }
      if (V) out.V[s] = (*V)(x) / cj.J;
      out.mu[s] = (mu ? (*mu)(x) : 1.0) / cj.J;
    }
  });

  for (const DeltaLine& line : src.deltaLines)
    out.deltaCurves.push_back(pushforward_delta(rmap, line.y0, line.sigma, options));
  return out;
}

DeltaCurve pushforward_delta(const RenormalizedMap& rmap, double y0, const RealField& sigma,
                             const PushforwardOptions& options) {
  const TorusGrid& grid = rmap.base.grid;
  if (sigma.size() != static_cast<std::size_t>(grid.n1()))
    throw Error(ErrorKind::Structural, "delta-line density must be sampled on the x1 grid");
  if (options.curveRefinement < 1) throw Error(ErrorKind::Config, "curve refinement must be >= 1");
  const MapEvaluator evaluator(rmap.base, table_factor(options, grid));
  const RealField fine = upsample_periodic(sigma, options.curveRefinement);
  const int count = static_cast<int>(fine.size());
  const double dt = kTwoPi / count;
  DeltaCurve curve;
  curve.points.resize(count);
  curve.sigma.resize(count);
  curve.arcWeights.resize(count);
  for (int t = 0; t < count; ++t) {
    const CompositeJet cj = composite_jet(rmap, evaluator.jet_interpolated(cd(t * dt, y0)));
    const double stretch = cj.Dg.col(0).norm();
    if (!(stretch > 0.0)) throw Error(ErrorKind::Orientation, "degenerate tangent on transported delta line");
    curve.points[t] = cj.g;
    curve.sigma[t] = fine[t] / stretch;
    curve.arcWeights[t] = stretch * dt;
  }
  return curve;
}

}  // namespace isoband
