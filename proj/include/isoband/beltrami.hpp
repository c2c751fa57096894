#pragma once

#include <vector>

#include "isoband/grid.hpp"
#include "isoband/metric_field.hpp"

namespace isoband {

struct SolverConfig {
  int maxIterations = 200;
  double tolerance = 1e-13;
  // Form the product q·∂_z f on a 3/2-padded grid and truncate.
  bool dealias = false;
};

/// The normalized periodic quasi-conformal map
///   f(z) = αz + βz̄ + p(z) − p(0),   p = Σ pHat[m,n] e^{i(m x1 + n x2)}
/// with pHat stored in FFT bin order on `grid`.
struct IsothermalMap {
  TorusGrid grid;
  cd alpha{1.0, 0.0};
  cd beta{0.0, 0.0};
  ComplexField pHat;
  cd kappa{0.0, kTwoPi};
  double residualL2 = 0.0;
  int iterations = 0;
  std::vector<double> residualHistory;
};

/// (m − i n) / (m + i n); maps Fourier coefficients of ∂_z̄ p to those of ∂_z p.
cd beurling_multiplier(int m, int n);

IsothermalMap solve_periodic_beltrami(const BeltramiCoefficient& q, const SolverConfig& cfg = {});

cd kappa_of(const IsothermalMap& map) noexcept;

/// Fourier coefficient tables of ∂_z p and ∂_z̄ p.
ComplexField dz_coefficients(const IsothermalMap& map);
ComplexField dzbar_coefficients(const IsothermalMap& map);

}  // namespace isoband
