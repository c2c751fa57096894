#pragma once

#include "isoband/coefficients.hpp"
#include "isoband/isothermal_map.hpp"

namespace isoband {

struct PushforwardOptions {
  // Table oversampling for bulk map and field evaluation; 0 picks
  // max(4, 1024 / n) so the tables have at least 1024 points per side.
  int oversample = 0;
  double newtonTolerance = 1e-11;
  // Curve samples per source grid point for transported delta lines.
  int curveRefinement = 4;
  int jobs = 1;
};

/// Transports a coefficient set through g = R ∘ f onto the flat torus with
/// metric A: each target sample y is pulled back to x = g⁻¹(y) and
///   ã(y) = (Dg(x)ᵀ)⁻¹ a(x),  Ṽ(y) = V(x)/J_g(x),  μ̃(y) = μ(x)/J_g(x).
/// Source delta lines become delta curves. The source must not carry ω
/// (apply the sandwich reduction first) or delta curves.
CoefficientSet pushforward(const RenormalizedMap& rmap, const CoefficientSet& src,
                           const PushforwardOptions& options = {});

/// Image of the line x2 = y0 under g, sampled at n1 · refinement parameter
/// values, with density σ̃ = σ / |Dg e1| and arc-length weights |Dg e1| dt.
DeltaCurve pushforward_delta(const RenormalizedMap& rmap, double y0, const RealField& sigma,
                             const PushforwardOptions& options = {});

/// g(x) = R f(x) together with Dg and J_g = det Dg.
struct CompositeJet {
  cd g;
  Eigen::Matrix2d Dg;
  double J;
};
CompositeJet composite_jet(const RenormalizedMap& rmap, const MapJet& jet) noexcept;

}  // namespace isoband
