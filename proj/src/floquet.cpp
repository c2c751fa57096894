#include "isoband/floquet.hpp"

#include <algorithm>
#include <cstdio>
#include <ostream>
#include <string>

#include "isoband/error.hpp"
#include "isoband/parallel.hpp"

namespace isoband {

void add_magnetic_form(FormCoefficients& form, std::size_t s, const Eigen::Matrix2d& G, const Eigen::Vector2d& a,
                       double V) {
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) form.add(r + 1, c + 1, s, G(r, c));
  double potential = V;
  if (a(0) != 0.0 || a(1) != 0.0) {
    const Eigen::Vector2d Ga = G * a;
    for (int l = 0; l < 2; ++l) {
      form.add(0, l + 1, s, cd(0.0, Ga(l)));
      form.add(l + 1, 0, s, cd(0.0, -Ga(l)));
    }
    potential += Ga.dot(a);
  }
  if (potential != 0.0) form.add(0, 0, s, potential);
}

std::pair<FormCoefficients, FormCoefficients> torus_form_coefficients(const CoefficientSet& coeffs) {
  coeffs.validate();
  const TorusGrid& g = coeffs.grid;
  FormCoefficients stiff(g.n1(), g.n2()), mass(g.n1(), g.n2());
  const bool magnetic = !coeffs.a1.empty() || !coeffs.a2.empty();
  for (std::size_t s = 0; s < g.size(); ++s) {
    const double w2 = coeffs.omega.empty() ? 1.0 : coeffs.omega[s] * coeffs.omega[s];
    Eigen::Matrix2d G;
    G << coeffs.metric(0, 0, s), coeffs.metric(0, 1, s), coeffs.metric(1, 0, s), coeffs.metric(1, 1, s);
    const Eigen::Vector2d a = magnetic ? Eigen::Vector2d(coeffs.a(0, s), coeffs.a(1, s)) : Eigen::Vector2d::Zero();
    add_magnetic_form(stiff, s, w2 * G, a, coeffs.V.empty() ? 0.0 : coeffs.V[s]);
    mass.add(0, 0, s, coeffs.mu.empty() ? 1.0 : coeffs.mu[s]);
  }
  return {std::move(stiff), std::move(mass)};
}

FiberAssembler::FiberAssembler(const CoefficientSet& coeffs, Cutoff cutoff) : cutoff_(cutoff) {
  auto [stiff, mass] = torus_form_coefficients(coeffs);
  auto basis = std::make_shared<const TransverseBasis>(TransverseBasis::exponential(cutoff.m2, coeffs.grid.n2()));
  std::vector<LineTerm> lines;
  for (const DeltaLine& d : coeffs.deltaLines) lines.push_back({d.y0, d.sigma});
  std::vector<PointTerm> points;
  for (const DeltaCurve& c : coeffs.deltaCurves) {
    PointTerm t{c.points, RealField(c.points.size())};
    for (std::size_t i = 0; i < c.points.size(); ++i) t.weights[i] = c.sigma[i] * c.arcWeights[i];
    points.push_back(std::move(t));
  }
  stiffness_ = std::make_shared<const FormTables>(stiff, basis, cutoff.m1, lines, points);
  mass_ = std::make_shared<const FormTables>(mass, basis, cutoff.m1);
}

FiberAssembler::FiberAssembler(std::shared_ptr<const FormTables> stiffness,
                               std::shared_ptr<const FormTables> mass, Cutoff cutoff)
    : stiffness_(std::move(stiffness)), mass_(std::move(mass)), cutoff_(cutoff) {
  if (stiffness_->size() != mass_->size())
    throw Error(ErrorKind::Structural, "stiffness and mass forms use different bases");
}

FiberOperator FiberAssembler::assemble(cd k) const {
  return {k, cutoff_, stiffness_->matrix(k), mass_->matrix(k)};
}

FiberOperator assemble_fiber(const CoefficientSet& coeffs, cd k, Cutoff cutoff) {
  return FiberAssembler(coeffs, cutoff).assemble(k);
}

std::vector<double> BandStructure::band(int j) const {
  std::vector<double> out;
  out.reserve(bands.size());
  for (const auto& row : bands) out.push_back(row[j]);
  return out;
}

BandStructure solve_bands(const FiberAssembler& assembler, const std::vector<double>& kGrid, int nBands,
                          int jobs) {
  if (nBands < 1 || nBands > assembler.size())
    throw Error(ErrorKind::Config, "band count must lie in [1, basis size]");
  BandStructure bs;
  bs.kGrid = kGrid;
  bs.bands.assign(kGrid.size(), {});
  parallel_for(kGrid.size(), jobs, [&](std::size_t i) {
    try {
      const FiberOperator op = assembler.assemble(kGrid[i]);
      bs.bands[i] = lowest_generalized_eigenvalues(op.H, op.B, nBands);
    } catch (const Error& e) {
      throw Error(ErrorKind::Numerical, "eigensolve failed at k index " + std::to_string(i) + ": " + e.what());
    }
  });
  bs.oscillation = band_oscillation(bs).oscillation;
  return bs;
}

BandStructure solve_bands(const CoefficientSet& coeffs, const std::vector<double>& kGrid, int nBands,
                          Cutoff cutoff, int jobs) {
  return solve_bands(FiberAssembler(coeffs, cutoff), kGrid, nBands, jobs);
}

OscillationReport band_oscillation(const BandStructure& bs, double threshold) {
  OscillationReport report;
  const int nb = bs.band_count();
  for (int j = 0; j < nb; ++j) {
    double lo = bs.bands.front()[j], hi = lo;
    for (const auto& row : bs.bands) {
      lo = std::min(lo, row[j]);
      hi = std::max(hi, row[j]);
    }
    report.oscillation.push_back(hi - lo);
    if (hi - lo < threshold) report.flagged.push_back(j);
  }
  return report;
}

std::vector<double> thomas_bound(const FiberAssembler& assembler, double betaShift,
                                 const std::vector<double>& yList, double lambda) {
  std::vector<double> out;
  for (double y : yList) {
    const FiberOperator op = assembler.assemble(cd(betaShift, y));
    out.push_back(smallest_singular_values(op.H - lambda * op.B, 1).front());
  }
  return out;
}

std::vector<double> thomas_bound(const CoefficientSet& coeffs, double betaShift, const std::vector<double>& yList,
                                 double lambda, Cutoff cutoff) {
  return thomas_bound(FiberAssembler(coeffs, cutoff), betaShift, yList, lambda);
}

std::vector<double> constant_metric_levels(const Eigen::Matrix2d& A, double k, Cutoff cutoff, int count) {
  std::vector<double> levels;
  for (int m = -cutoff.m1; m <= cutoff.m1; ++m)
    for (int n = -cutoff.m2; n <= cutoff.m2; ++n) {
      const Eigen::Vector2d xi(m + k, n);
      levels.push_back(xi.dot(A * xi));
    }
  std::sort(levels.begin(), levels.end());
  levels.resize(std::min<std::size_t>(levels.size(), count));
  return levels;
}

std::vector<double> uniform_k_grid(int count) {
  std::vector<double> k(count);
  for (int i = 0; i < count; ++i) k[i] = static_cast<double>(i) / count;
  return k;
}

std::vector<double> half_k_grid(int count) {
  if (count < 2) return {0.0};
  std::vector<double> k(count);
  for (int i = 0; i < count; ++i) k[i] = 0.5 * i / (count - 1);
  return k;
}

void write_bands_csv(const BandStructure& bs, std::ostream& out) {
  out << "k";
  for (int j = 0; j < bs.band_count(); ++j) out << ",band" << (j + 1);
  out << '\n';
  char buf[40];
  for (std::size_t i = 0; i < bs.kGrid.size(); ++i) {
    std::snprintf(buf, sizeof buf, "%.17g", bs.kGrid[i]);
    out << buf;
    for (double v : bs.bands[i]) {
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out << ',' << buf;
    }
    out << '\n';
  }
}

}  // namespace isoband
