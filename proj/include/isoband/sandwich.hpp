#pragma once

#include <Eigen/Core>
#include <vector>

#include "isoband/boundary.hpp"
#include "isoband/coefficients.hpp"
#include "isoband/metric_field.hpp"

namespace isoband {

/// Potential and edge densities of the operator obtained from the ω-weighted
/// form ∫ ω²⟨G∇u, ∇u⟩ + V|u|² by the substitution φ = ωu:
///   Ṽ = ω⁻²V + ω⁻¹∇·(G∇ω),   σ̃ = −ω⁻¹⟨G∇ω, n⟩ on each edge (outward normal n).
/// Edge densities are empty on the torus.
struct SandwichReduction {
  RealField V;
  RealField sigmaBottom, sigmaTop;
};

/// Torus: derivatives are spectral. Empty V means zero.
SandwichReduction sandwich_reduce(const TorusGrid& grid, const RealField& omega, const MetricField& G,
                                  const RealField& V);
/// Strip with a constant metric: spectral in x1, fourth-order differences in x2.
SandwichReduction sandwich_reduce(const StripGrid& grid, const RealField& omega, const Eigen::Matrix2d& G,
                                  const RealField& V);

/// Coefficient set for φ = ωu: V becomes Ṽ, μ becomes μω⁻², ω is dropped.
/// The magnetic potential is unchanged because ω is real.
CoefficientSet sandwich_reduce(const CoefficientSet& weighted);

/// Lowest fiber eigenvalues of the ω-weighted torus problem (Gram μ = ω²
/// implied by the caller's coefficient set) and of its reduction, assembled
/// in the same plane-wave basis. Measurement "sandwich" is the worst
/// entrywise difference.
ValidationReport verify_sandwich(const CoefficientSet& weighted, const std::vector<double>& kGrid, int nBands,
                                 Cutoff cutoff, double tol = 1e-6, int jobs = 1);

/// Strip counterpart: the weighted problem is assembled on the functions
/// ω⁻¹ψ (ψ the sine or cosine basis) so that both sides share a subspace.
ValidationReport verify_sandwich(const StripGrid& grid, BoundaryCondition bc, const Eigen::Matrix2d& G,
                                 const RealField& omega, const RealField& V, const std::vector<double>& kGrid,
                                 int nBands, Cutoff cutoff, double tol = 1e-6, int jobs = 1);

}  // namespace isoband
