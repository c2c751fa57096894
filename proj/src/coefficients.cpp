#include "isoband/coefficients.hpp"

#include <Eigen/LU>
#include <cmath>
#include <string>

#include "isoband/error.hpp"

namespace isoband {
namespace {

void require_size_or_empty(const RealField& f, std::size_t n, const char* name) {
  if (!f.empty() && f.size() != n)
    throw Error(ErrorKind::Structural, std::string(name) + " does not match the grid size");
}

}  // namespace

void CoefficientSet::validate() const {
  const std::size_t n = grid.size();
  require_size_or_empty(a1, n, "a1");
  require_size_or_empty(a2, n, "a2");
  require_size_or_empty(V, n, "V");
  require_size_or_empty(mu, n, "mu");
  require_size_or_empty(omega, n, "omega");
  if (G && !(G->grid == grid)) throw Error(ErrorKind::Structural, "metric field lives on a different grid");
  if (!G) {
    if (std::abs(A(0, 1) - A(1, 0)) > 1e-14 * A.norm())
      throw Error(ErrorKind::InvalidMetric, "constant metric must be symmetric");
    if (!(A(0, 0) > 0.0) || !(A.determinant() > 0.0))
      throw Error(ErrorKind::InvalidMetric, "constant metric must be positive definite");
  }
  for (double m : mu)
    if (!(m > 0.0)) throw Error(ErrorKind::Domain, "weight mu must be positive at every sample");
  for (double w : omega)
    if (!(w > 0.0)) throw Error(ErrorKind::Domain, "factor omega must be positive at every sample");
  for (const DeltaLine& line : deltaLines)
    if (line.sigma.size() != static_cast<std::size_t>(grid.n1()))
      throw Error(ErrorKind::Structural, "delta-line density must be sampled on the x1 grid");
  for (const DeltaCurve& curve : deltaCurves)
    if (curve.sigma.size() != curve.points.size() || curve.arcWeights.size() != curve.points.size())
      throw Error(ErrorKind::Structural, "delta-curve samples are inconsistent");
}

double CoefficientSet::metric(int row, int col, std::size_t s) const {
  if (!G) return A(row, col);
  if (row == 0 && col == 0) return G->g11[s];
  if (row == 1 && col == 1) return G->g22[s];
  return G->g12[s];
}

double CoefficientSet::a(int component, std::size_t s) const {
  const RealField& f = component == 0 ? a1 : a2;
  return f.empty() ? 0.0 : f[s];
}

}  // namespace isoband
