#include "isoband/boundary.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "isoband/error.hpp"

namespace isoband {
namespace {

void require_strip_field(const RealField& f, const StripGrid& g, const char* name) {
  if (!f.empty() && f.size() != g.size())
    throw Error(ErrorKind::Structural, std::string(name) + " does not match the strip grid");
}

void require_edge_field(const RealField& f, const StripGrid& g, const char* name) {
  if (!f.empty() && f.size() != static_cast<std::size_t>(g.n1()))
    throw Error(ErrorKind::Structural, std::string(name) + " must be sampled on the x1 grid");
}

Eigen::Matrix2d diagonal(const Eigen::Vector2d& B) {
  Eigen::Matrix2d M = Eigen::Matrix2d::Zero();
  M(0, 0) = B(0);
  M(1, 1) = B(1);
  return M;
}

double value_or_zero(const RealField& f, std::size_t s) { return f.empty() ? 0.0 : f[s]; }

std::vector<double> merged_lowest(const std::vector<double>& a, const std::vector<double>& b, std::size_t count) {
  std::vector<double> all(a);
  all.insert(all.end(), b.begin(), b.end());
  std::sort(all.begin(), all.end());
  all.resize(std::min(all.size(), count));
  return all;
}

double worst_difference(const BandStructure& x, const BandStructure& y) {
  double w = 0.0;
  for (std::size_t i = 0; i < x.bands.size(); ++i)
    for (std::size_t j = 0; j < x.bands[i].size(); ++j) w = std::max(w, std::abs(x.bands[i][j] - y.bands[i][j]));
  return w;
}

}  // namespace

void StripProblem::validate() const {
  require_strip_field(a1, grid, "a1");
  require_strip_field(a2, grid, "a2");
  require_strip_field(V, grid, "V");
  require_edge_field(robinBottom, grid, "bottom edge density");
  require_edge_field(robinTop, grid, "top edge density");
  if (!(B(0) > 0.0) || !(B(1) > 0.0)) throw Error(ErrorKind::InvalidMetric, "strip metric must be positive diagonal");
  for (const DeltaLine& line : deltaLines) {
    if (!(line.y0 > 0.0 && line.y0 < std::numbers::pi))
      throw Error(ErrorKind::Domain, "strip delta lines must lie strictly inside (0, pi)");
    require_edge_field(line.sigma, grid, "delta-line density");
  }
}

DoubledProblem reflect_coefficients(const StripProblem& sp) {
  sp.validate();
  const StripGrid& sg = sp.grid;
  if (sg.n2() % 2 != 0) throw Error(ErrorKind::Structural, "strip grid is not reflectable: odd interval count");
  DoubledProblem dp(TorusGrid(sg.n1(), 2 * sg.n2()));
  dp.B = sp.B;
  const TorusGrid& g = dp.grid;
  auto extend = [&](const RealField& f, double parity) {
    RealField out;
    if (f.empty()) return out;
    out.resize(g.size());
    for (int i = 0; i < g.n1(); ++i)
      for (int j = 0; j < g.n2(); ++j) {
        const bool upper = j > sg.n2();
        const int src = upper ? g.n2() - j : j;
        out[g.index(i, j)] = (upper ? parity : 1.0) * f[sg.index(i, src)];
      }
    return out;
  };
  dp.b1 = extend(sp.a1, 1.0);
  dp.b2 = extend(sp.a2, -1.0);
  dp.Q = extend(sp.V, 1.0);
  if (!sp.a2.empty()) {
    double peak = 0.0, edge = 0.0;
    for (double v : sp.a2) peak = std::max(peak, std::abs(v));
    for (int i = 0; i < sg.n1(); ++i)
      edge = std::max({edge, std::abs(sp.a2[sg.index(i, 0)]), std::abs(sp.a2[sg.index(i, sg.n2())])});
    if (edge > 1e-12 * peak)
      throw Error(ErrorKind::Domain, "a2 must vanish on both strip edges for its odd extension to be continuous");
    for (int i = 0; i < g.n1(); ++i) dp.b2[g.index(i, 0)] = dp.b2[g.index(i, sg.n2())] = 0.0;
  }
  for (const DeltaLine& line : sp.deltaLines) {
    dp.rho.push_back({line.y0, line.sigma});
    dp.rho.push_back({kTwoPi - line.y0, line.sigma});
  }
  if (sp.bc == BoundaryCondition::Neumann) {
    for (const RealField* edge : {&sp.robinBottom, &sp.robinTop}) {
      if (edge->empty()) continue;
      const double y0 = edge == &sp.robinBottom ? 0.0 : std::numbers::pi;
      dp.rho.push_back({y0, *edge});
      dp.rho.push_back({y0, *edge});
    }
  }
  return dp;
}

ParityParts parity_project(const ComplexField& u, const TorusGrid& grid) {
  if (u.size() != grid.size()) throw Error(ErrorKind::Structural, "field does not match grid");
  ParityParts p{ComplexField(u.size()), ComplexField(u.size())};
  for (int i = 0; i < grid.n1(); ++i)
    for (int j = 0; j < grid.n2(); ++j) {
      const cd here = u[grid.index(i, j)];
      const cd mirror = u[grid.index(i, (grid.n2() - j) % grid.n2())];
      p.even[grid.index(i, j)] = 0.5 * (here + mirror);
      p.odd[grid.index(i, j)] = 0.5 * (here - mirror);
    }
  return p;
}

FiberAssembler strip_assembler(const StripProblem& sp, Cutoff cutoff) {
  sp.validate();
  const StripGrid& g = sp.grid;
  FormCoefficients stiff(g.n1(), g.rows()), mass(g.n1(), g.rows());
  const Eigen::Matrix2d B = diagonal(sp.B);
  for (std::size_t s = 0; s < g.size(); ++s) {
    add_magnetic_form(stiff, s, B, Eigen::Vector2d(value_or_zero(sp.a1, s), value_or_zero(sp.a2, s)),
                      value_or_zero(sp.V, s));
    mass.add(0, 0, s, 1.0);
  }
  std::vector<LineTerm> lines;
  for (const DeltaLine& line : sp.deltaLines) lines.push_back({line.y0, line.sigma});
  if (sp.bc == BoundaryCondition::Neumann) {
    if (!sp.robinBottom.empty()) lines.push_back({0.0, sp.robinBottom});
    if (!sp.robinTop.empty()) lines.push_back({std::numbers::pi, sp.robinTop});
  }
  auto basis = std::make_shared<const TransverseBasis>(
      TransverseBasis::strip(sp.bc == BoundaryCondition::Dirichlet, cutoff.m2, g.n2(), sp.quadrature));
  return FiberAssembler(std::make_shared<const FormTables>(stiff, basis, cutoff.m1, lines),
                        std::make_shared<const FormTables>(mass, basis, cutoff.m1), cutoff);
}

FiberOperator assemble_strip_fiber(const StripProblem& sp, cd k, Cutoff cutoff) {
  return strip_assembler(sp, cutoff).assemble(k);
}

FiberAssembler doubled_assembler(const DoubledProblem& dp, Cutoff cutoff, Parity parity) {
  const TorusGrid& g = dp.grid;
  FormCoefficients stiff(g.n1(), g.n2()), mass(g.n1(), g.n2());
  const Eigen::Matrix2d B = diagonal(dp.B);
  for (std::size_t s = 0; s < g.size(); ++s) {
    add_magnetic_form(stiff, s, B, Eigen::Vector2d(value_or_zero(dp.b1, s), value_or_zero(dp.b2, s)),
                      value_or_zero(dp.Q, s));
    mass.add(0, 0, s, 1.0);
  }
  std::vector<LineTerm> lines;
  for (const DeltaLine& line : dp.rho) lines.push_back({line.y0, line.sigma});
  auto basis = std::make_shared<const TransverseBasis>(
      parity == Parity::Full ? TransverseBasis::exponential(cutoff.m2, g.n2())
                             : TransverseBasis::cylinder(parity == Parity::Odd, cutoff.m2, g.n2()));
  return FiberAssembler(std::make_shared<const FormTables>(stiff, basis, cutoff.m1, lines),
                        std::make_shared<const FormTables>(mass, basis, cutoff.m1), cutoff);
}

FiberOperator assemble_doubled_fiber(const DoubledProblem& dp, cd k, Cutoff cutoff, Parity parity) {
  return doubled_assembler(dp, cutoff, parity).assemble(k);
}

ReflectionReport verify_reflection_equivalence(const StripProblem& sp, const std::vector<double>& kGrid, int nBands,
                                               Cutoff cutoff, double tol, int jobs) {
  StripProblem dir = sp, neu = sp;
  dir.bc = BoundaryCondition::Dirichlet;
  neu.bc = BoundaryCondition::Neumann;
  const DoubledProblem dp = reflect_coefficients(neu);
  const DoubledProblem dpOdd = reflect_coefficients(dir);

  ReflectionReport rep;
  rep.dirichlet = solve_bands(strip_assembler(dir, cutoff), kGrid, nBands, jobs);
  rep.neumann = solve_bands(strip_assembler(neu, cutoff), kGrid, nBands, jobs);
  rep.doubled = solve_bands(doubled_assembler(dp, cutoff, Parity::Full), kGrid, nBands, jobs);
  rep.doubledEven = solve_bands(doubled_assembler(dp, cutoff, Parity::Even), kGrid, nBands, jobs);
  rep.doubledOdd = solve_bands(doubled_assembler(dpOdd, cutoff, Parity::Odd), kGrid, nBands, jobs);

  BandStructure stripUnion, parityUnion;
  stripUnion.kGrid = parityUnion.kGrid = kGrid;
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    stripUnion.bands.push_back(merged_lowest(rep.dirichlet.bands[i], rep.neumann.bands[i], nBands));
    parityUnion.bands.push_back(merged_lowest(rep.doubledEven.bands[i], rep.doubledOdd.bands[i], nBands));
  }
  const std::pair<const char*, double> checks[] = {
      {"dirichlet-odd", worst_difference(rep.dirichlet, rep.doubledOdd)},
      {"neumann-even", worst_difference(rep.neumann, rep.doubledEven)},
      {"union-full", worst_difference(stripUnion, rep.doubled)},
      {"parity-full", worst_difference(parityUnion, rep.doubled)},
  };
  for (const auto& [name, value] : checks) {
    rep.summary.measurements.emplace_back(name, value);
    if (!(value <= tol)) rep.summary.add_violation({name, 0, 0, value});
  }
  return rep;
}

std::vector<double> separable_strip_levels(const Eigen::Vector2d& B, BoundaryCondition bc, double k, Cutoff cutoff,
                                           int count) {
  std::vector<double> levels;
  const int nMin = bc == BoundaryCondition::Dirichlet ? 1 : 0;
  for (int m = -cutoff.m1; m <= cutoff.m1; ++m)
    for (int n = nMin; n <= cutoff.m2; ++n) levels.push_back(B(0) * (m + k) * (m + k) + B(1) * n * n);
  std::sort(levels.begin(), levels.end());
  levels.resize(std::min<std::size_t>(levels.size(), count));
  return levels;
}

double corner_exponent(cd gammaMinus, cd gammaPlus, cd q0) {
  if (!(std::abs(q0) < 1.0)) throw Error(ErrorKind::Domain, "corner exponent needs |q0| < 1");
  if (gammaMinus == 0.0 || gammaPlus == 0.0) throw Error(ErrorKind::Domain, "corner tangents must be nonzero");
  const cd num = gammaMinus + q0 * std::conj(gammaMinus);
  const cd den = gammaPlus + q0 * std::conj(gammaPlus);
  if (std::abs(den) == 0.0 || std::abs(num) == 0.0)
    throw Error(ErrorKind::Numerical, "degenerate tangent image in corner exponent");
  double angle = std::arg(-num / den);
  if (angle <= 0.0) angle += kTwoPi;
  return angle / std::numbers::pi;
}

}  // namespace isoband
