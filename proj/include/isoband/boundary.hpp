#pragma once

#include <Eigen/Core>
#include <vector>

#include "isoband/coefficients.hpp"
#include "isoband/floquet.hpp"

namespace isoband {

enum class BoundaryCondition { Dirichlet, Neumann };

/// Periodic problem on the strip ℝ × (0, π) with constant diagonal metric
///   ∫ ⟨B(D − a)u, (D − a)u⟩ + V|u|² + ∫ σ₀|u(·,0)|² + ∫ σ_π|u(·,π)|² + Σ ∫ σ|u(·,y0)|².
/// Fields are sampled on the closed strip grid; empty fields are zero. The
/// edge densities only act under the Neumann condition.
struct StripProblem {
  BoundaryCondition bc = BoundaryCondition::Dirichlet;
  StripGrid grid;
  Eigen::Vector2d B{1.0, 1.0};  // diagonal entries
  RealField a1, a2, V;
  RealField robinBottom, robinTop;  // sampled on the x1 grid
  std::vector<DeltaLine> deltaLines;
  StripQuadrature quadrature = StripQuadrature::Trapezoid;

  explicit StripProblem(StripGrid g) : grid(g) {}
  void validate() const;
};

/// Even/odd extension of a strip problem to the cylinder x2 ∈ [0, 2π), where
/// the mirror image of x2 is 2π − x2. b1 and Q are even, b2 is odd; rho holds
/// mirrored interior lines and two copies of each edge density.
struct DoubledProblem {
  TorusGrid grid;
  Eigen::Vector2d B{1.0, 1.0};
  RealField b1, b2, Q;
  std::vector<DeltaLine> rho;

  explicit DoubledProblem(TorusGrid g) : grid(g) {}
};

DoubledProblem reflect_coefficients(const StripProblem& sp);

/// Splits a cylinder field into P± u = (u(x1, x2) ± u(x1, −x2)) / 2.
struct ParityParts {
  ComplexField even, odd;
};
ParityParts parity_project(const ComplexField& u, const TorusGrid& grid);

/// Transverse subspace used for the doubled cylinder.
enum class Parity { Full, Even, Odd };

FiberAssembler strip_assembler(const StripProblem& sp, Cutoff cutoff);
FiberOperator assemble_strip_fiber(const StripProblem& sp, cd k, Cutoff cutoff);

FiberAssembler doubled_assembler(const DoubledProblem& dp, Cutoff cutoff, Parity parity);
FiberOperator assemble_doubled_fiber(const DoubledProblem& dp, cd k, Cutoff cutoff, Parity parity);

/// Bands of the strip and doubled assemblies with the worst entrywise
/// mismatches: dirichlet-odd, neumann-even, union-full (sorted strip union
/// against the full cylinder) and parity-full (sorted even ∪ odd cylinder
/// bands against the full cylinder).
struct ReflectionReport {
  ValidationReport summary;
  BandStructure dirichlet, neumann, doubled, doubledEven, doubledOdd;
};
ReflectionReport verify_reflection_equivalence(const StripProblem& sp, const std::vector<double>& kGrid, int nBands,
                                               Cutoff cutoff, double tol = 1e-8, int jobs = 1);

/// Lowest `count` values of B1(m + k)² + B2 n², |m| ≤ m1, with n ∈ [1, m2]
/// (Dirichlet) or n ∈ [0, m2] (Neumann): the free strip spectrum.
std::vector<double> separable_strip_levels(const Eigen::Vector2d& B, BoundaryCondition bc, double k, Cutoff cutoff,
                                           int count);

/// Exponent ν ∈ (0, 2] of the map at a boundary corner with one-sided
/// tangents γ'(t0 ∓ 0) and Beltrami coefficient q0 at the corner:
///   ν = arg(−(γ'₋ + q0 conj γ'₋) / (γ'₊ + q0 conj γ'₊)) / π, arg taken in (0, 2π].
/// The boundary is traversed with the domain on the left.
double corner_exponent(cd gammaMinus, cd gammaPlus, cd q0);

}  // namespace isoband
