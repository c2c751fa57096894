#include "isoband/sandwich.hpp"

#include <algorithm>
#include <numbers>
#include <span>

#include "isoband/error.hpp"
#include "isoband/fft.hpp"

namespace isoband {
namespace {

void require_positive(const RealField& omega, std::size_t size) {
  if (omega.size() != size) throw Error(ErrorKind::Structural, "omega does not match the grid");
  for (double w : omega)
    if (!(w > 0.0) || !std::isfinite(w)) throw Error(ErrorKind::Domain, "omega must stay strictly positive");
}

// Spectral partial derivatives of a real torus field; the unpaired Nyquist
// mode is dropped.
std::pair<RealField, RealField> torus_gradient(const TorusGrid& g, const RealField& f) {
  const Fft2d fft(g.n1(), g.n2());
  const ComplexField hat = fft.forward(std::span<const double>(f));
  ComplexField d1(hat.size()), d2(hat.size());
  for (int a = 0; a < g.n1(); ++a) {
    const int m = signed_frequency(a, g.n1());
    for (int b = 0; b < g.n2(); ++b) {
      const int n = signed_frequency(b, g.n2());
      const std::size_t s = g.index(a, b);
      d1[s] = 2 * m == -g.n1() ? cd{} : cd(0.0, m) * hat[s];
      d2[s] = 2 * n == -g.n2() ? cd{} : cd(0.0, n) * hat[s];
    }
  }
  const ComplexField v1 = fft.backward(d1), v2 = fft.backward(d2);
  RealField r1(f.size()), r2(f.size());
  for (std::size_t s = 0; s < f.size(); ++s) {
    r1[s] = v1[s].real();
    r2[s] = v2[s].real();
  }
  return {std::move(r1), std::move(r2)};
}

RealField strip_dx1(const StripGrid& g, const RealField& f) {
  const Fft1d fft(g.n1());
  ComplexField line(g.n1());
  RealField out(f.size());
  for (int j = 0; j < g.rows(); ++j) {
    for (int i = 0; i < g.n1(); ++i) line[i] = f[g.index(i, j)];
    fft.forward(line, line);
    for (int a = 0; a < g.n1(); ++a) {
      const int m = signed_frequency(a, g.n1());
      line[a] = 2 * m == -g.n1() ? cd{} : cd(0.0, m) * line[a];
    }
    fft.backward(line, line);
    for (int i = 0; i < g.n1(); ++i) out[g.index(i, j)] = line[i].real();
  }
  return out;
}

// Fourth-order difference stencils across [0, π]: centred inside, one-sided
// at the two nodes next to each edge. `edge` and `near` are read from the
// edge inwards; at the top edge they are mirrored (with a sign flip for odd
// derivative order).
RealField strip_difference(const StripGrid& g, const RealField& f, std::span<const double> edge,
                           std::span<const double> near, std::span<const double> centre, double scale,
                           double mirrorSign) {
  const int n2 = g.n2();
  const int width = static_cast<int>(edge.size());
  const int half = static_cast<int>(centre.size()) / 2;
  RealField out(f.size());
  for (int i = 0; i < g.n1(); ++i) {
    auto at = [&](int j) { return f[g.index(i, j)]; };
    for (int j = 0; j <= n2; ++j) {
      double acc = 0.0;
      if (j == 0 || j == n2) {
        for (int t = 0; t < width; ++t) acc += (j == 0 ? 1.0 : mirrorSign) * edge[t] * at(j == 0 ? t : n2 - t);
      } else if (j == 1 || j == n2 - 1) {
        for (int t = 0; t < width; ++t) acc += (j == 1 ? 1.0 : mirrorSign) * near[t] * at(j == 1 ? t : n2 - t);
      } else {
        for (int t = -half; t <= half; ++t) acc += centre[t + half] * at(j + t);
      }
      out[g.index(i, j)] = acc * scale;
    }
  }
  return out;
}

RealField strip_dx2(const StripGrid& g, const RealField& f) {
  static constexpr double kEdge[] = {-25.0, 48.0, -36.0, 16.0, -3.0};
  static constexpr double kNear[] = {-3.0, -10.0, 18.0, -6.0, 1.0};
  static constexpr double kCentre[] = {1.0, -8.0, 0.0, 8.0, -1.0};
  return strip_difference(g, f, kEdge, kNear, kCentre, 1.0 / (12.0 * g.h2()), -1.0);
}

RealField strip_dx2x2(const StripGrid& g, const RealField& f) {
  static constexpr double kEdge[] = {45.0, -154.0, 214.0, -156.0, 61.0, -10.0};
  static constexpr double kNear[] = {10.0, -15.0, -4.0, 14.0, -6.0, 1.0};
  static constexpr double kCentre[] = {-1.0, 16.0, -30.0, 16.0, -1.0};
  return strip_difference(g, f, kEdge, kNear, kCentre, 1.0 / (12.0 * g.h2() * g.h2()), 1.0);
}

}  // namespace

SandwichReduction sandwich_reduce(const TorusGrid& grid, const RealField& omega, const MetricField& G,
                                  const RealField& V) {
  require_positive(omega, grid.size());
  if (!(G.grid == grid)) throw Error(ErrorKind::Structural, "metric lives on a different grid");
  if (!V.empty() && V.size() != grid.size()) throw Error(ErrorKind::Structural, "V does not match the grid");
  const auto [w1, w2] = torus_gradient(grid, omega);
  RealField F1(grid.size()), F2(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    F1[s] = G.g11[s] * w1[s] + G.g12[s] * w2[s];
    F2[s] = G.g12[s] * w1[s] + G.g22[s] * w2[s];
  }
  const RealField div1 = torus_gradient(grid, F1).first, div2 = torus_gradient(grid, F2).second;
  SandwichReduction out;
  out.V.resize(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const double w = omega[s];
    out.V[s] = (V.empty() ? 0.0 : V[s]) / (w * w) + (div1[s] + div2[s]) / w;
  }
  return out;
}

SandwichReduction sandwich_reduce(const StripGrid& grid, const RealField& omega, const Eigen::Matrix2d& G,
                                  const RealField& V) {
  require_positive(omega, grid.size());
  if (!V.empty() && V.size() != grid.size()) throw Error(ErrorKind::Structural, "V does not match the strip grid");
  const RealField w1 = strip_dx1(grid, omega), w2 = strip_dx2(grid, omega);
  const RealField w11 = strip_dx1(grid, w1), w12 = strip_dx1(grid, w2), w22 = strip_dx2x2(grid, omega);
  RealField F2(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) F2[s] = G(1, 0) * w1[s] + G(1, 1) * w2[s];
  SandwichReduction out;
  out.V.resize(grid.size());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const double w = omega[s];
    const double div = G(0, 0) * w11[s] + (G(0, 1) + G(1, 0)) * w12[s] + G(1, 1) * w22[s];
    out.V[s] = (V.empty() ? 0.0 : V[s]) / (w * w) + div / w;
  }
  out.sigmaBottom.resize(grid.n1());
  out.sigmaTop.resize(grid.n1());
  for (int i = 0; i < grid.n1(); ++i) {
    const std::size_t bottom = grid.index(i, 0), top = grid.index(i, grid.n2());
    out.sigmaBottom[i] = F2[bottom] / omega[bottom];
    out.sigmaTop[i] = -F2[top] / omega[top];
  }
  return out;
}

CoefficientSet sandwich_reduce(const CoefficientSet& weighted) {
  weighted.validate();
  CoefficientSet out = weighted;
  if (weighted.omega.empty()) return out;
  const TorusGrid& g = weighted.grid;
  const MetricField G =
      weighted.G ? *weighted.G : MetricField::constant(g, weighted.A(0, 0), weighted.A(0, 1), weighted.A(1, 1));
  out.V = sandwich_reduce(g, weighted.omega, G, weighted.V).V;
  out.mu.resize(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) {
    const double w = weighted.omega[s];
    out.mu[s] = (weighted.mu.empty() ? 1.0 : weighted.mu[s]) / (w * w);
  }
  out.omega.clear();
  return out;
}

ValidationReport verify_sandwich(const CoefficientSet& weighted, const std::vector<double>& kGrid, int nBands,
                                 Cutoff cutoff, double tol, int jobs) {
  const BandStructure left = solve_bands(weighted, kGrid, nBands, cutoff, jobs);
  const BandStructure right = solve_bands(sandwich_reduce(weighted), kGrid, nBands, cutoff, jobs);
  double worst = 0.0;
  for (std::size_t i = 0; i < kGrid.size(); ++i)
    for (int j = 0; j < nBands; ++j) worst = std::max(worst, std::abs(left.bands[i][j] - right.bands[i][j]));
  ValidationReport rep;
  rep.measurements.emplace_back("sandwich", worst);
  if (!(worst <= tol)) rep.add_violation({"sandwich", 0, 0, worst});
  return rep;
}

ValidationReport verify_sandwich(const StripGrid& grid, BoundaryCondition bc, const Eigen::Matrix2d& G,
                                 const RealField& omega, const RealField& V, const std::vector<double>& kGrid,
                                 int nBands, Cutoff cutoff, double tol, int jobs) {
  const SandwichReduction red = sandwich_reduce(grid, omega, G, V);
  const RealField w1 = strip_dx1(grid, omega), w2 = strip_dx2(grid, omega);

  FormCoefficients weightedForm(grid.n1(), grid.rows()), reducedForm(grid.n1(), grid.rows()),
      mass(grid.n1(), grid.rows());
  for (std::size_t s = 0; s < grid.size(); ++s) {
    const Eigen::Vector2d b(w1[s] / omega[s], w2[s] / omega[s]);
    const Eigen::Vector2d Gb = G * b;
    for (int r = 0; r < 2; ++r)
      for (int c = 0; c < 2; ++c) {
        weightedForm.add(r + 1, c + 1, s, G(r, c));
        reducedForm.add(r + 1, c + 1, s, G(r, c));
      }
    for (int l = 0; l < 2; ++l) {
      weightedForm.add(0, l + 1, s, -Gb(l));
      weightedForm.add(l + 1, 0, s, -Gb(l));
    }
    const double v = V.empty() ? 0.0 : V[s];
    weightedForm.add(0, 0, s, Gb.dot(b) + v / (omega[s] * omega[s]));
    reducedForm.add(0, 0, s, red.V[s]);
    mass.add(0, 0, s, 1.0);
  }
  std::vector<LineTerm> edges;
  if (bc == BoundaryCondition::Neumann) {
    edges.push_back({0.0, red.sigmaBottom});
    edges.push_back({std::numbers::pi, red.sigmaTop});
  }
  auto basis = std::make_shared<const TransverseBasis>(
      TransverseBasis::strip(bc == BoundaryCondition::Dirichlet, cutoff.m2, grid.n2(), StripQuadrature::Boole));
  auto gram = std::make_shared<const FormTables>(mass, basis, cutoff.m1);
  const FiberAssembler left(std::make_shared<const FormTables>(weightedForm, basis, cutoff.m1), gram, cutoff);
  const FiberAssembler right(std::make_shared<const FormTables>(reducedForm, basis, cutoff.m1, edges), gram, cutoff);
  const BandStructure a = solve_bands(left, kGrid, nBands, jobs), b = solve_bands(right, kGrid, nBands, jobs);
  double worst = 0.0;
  for (std::size_t i = 0; i < kGrid.size(); ++i)
    for (int j = 0; j < nBands; ++j) worst = std::max(worst, std::abs(a.bands[i][j] - b.bands[i][j]));
  ValidationReport rep;
  rep.measurements.emplace_back("sandwich", worst);
  if (!(worst <= tol)) rep.add_violation({"sandwich", 0, 0, worst});
  return rep;
}

}  // namespace isoband
