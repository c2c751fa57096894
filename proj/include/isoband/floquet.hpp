#pragma once

#include <iosfwd>
#include <memory>
#include <vector>

#include "isoband/coefficients.hpp"
#include "isoband/linalg.hpp"
#include "isoband/spectral_form.hpp"

namespace isoband {

struct FiberOperator {
  cd k;
  Cutoff cutoff;
  CMatrix H;  // form matrix h_P(k)
  CMatrix B;  // Gram matrix of the weight
};

/// Quasimomentum-independent tables for one coefficient set; assemble(k)
/// is cheap and safe to call from several threads.
class FiberAssembler {
 public:
  FiberAssembler(const CoefficientSet& coeffs, Cutoff cutoff);
  FiberAssembler(std::shared_ptr<const FormTables> stiffness, std::shared_ptr<const FormTables> mass,
                 Cutoff cutoff);

  FiberOperator assemble(cd k) const;
  int size() const noexcept { return stiffness_->size(); }
  Cutoff cutoff() const noexcept { return cutoff_; }

 private:
  std::shared_ptr<const FormTables> stiffness_, mass_;
  Cutoff cutoff_;
};

/// Adds the integrand ⟨G(D − a)u, (D − a)u⟩ + V|u|² at sample s, D = −i∇.
void add_magnetic_form(FormCoefficients& form, std::size_t s, const Eigen::Matrix2d& G, const Eigen::Vector2d& a,
                       double V);

/// Stiffness and Gram form coefficients of a torus coefficient set, sampled on its grid.
std::pair<FormCoefficients, FormCoefficients> torus_form_coefficients(const CoefficientSet& coeffs);

FiberOperator assemble_fiber(const CoefficientSet& coeffs, cd k, Cutoff cutoff);

struct BandStructure {
  std::vector<double> kGrid;
  std::vector<std::vector<double>> bands;  // bands[i][j] = λ_{j+1}(k_i)
  std::vector<double> oscillation;          // per band, max − min over the k grid

  int band_count() const noexcept { return bands.empty() ? 0 : static_cast<int>(bands.front().size()); }
  std::vector<double> band(int j) const;
};

/// Lowest nBands generalized eigenvalues for each k, using up to `jobs` threads.
BandStructure solve_bands(const FiberAssembler& assembler, const std::vector<double>& kGrid, int nBands,
                          int jobs = 1);
BandStructure solve_bands(const CoefficientSet& coeffs, const std::vector<double>& kGrid, int nBands,
                          Cutoff cutoff, int jobs = 1);

/// Per-band oscillation and the indices of bands below the flatness threshold.
struct OscillationReport {
  std::vector<double> oscillation;
  std::vector<int> flagged;
};
inline constexpr double kFlatBandThreshold = 1e-8;
OscillationReport band_oscillation(const BandStructure& bs, double threshold = kFlatBandThreshold);

/// Smallest singular value of H(β + iy) − λB for each y.
std::vector<double> thomas_bound(const CoefficientSet& coeffs, double betaShift, const std::vector<double>& yList,
                                 double lambda, Cutoff cutoff);
std::vector<double> thomas_bound(const FiberAssembler& assembler, double betaShift,
                                 const std::vector<double>& yList, double lambda);

/// Lowest `count` values of ⟨A(m + k, n), (m + k, n)⟩ over |m| ≤ m1, |n| ≤ m2:
/// the exact fiber spectrum of a constant metric in the truncated basis.
std::vector<double> constant_metric_levels(const Eigen::Matrix2d& A, double k, Cutoff cutoff, int count);

/// k_i = i / count, i = 0..count−1.
std::vector<double> uniform_k_grid(int count);
/// count points spaced evenly on the closed interval [0, 1/2].
std::vector<double> half_k_grid(int count);

/// CSV with header k,band1,...,bandN and 17 significant digits.
void write_bands_csv(const BandStructure& bs, std::ostream& out);

}  // namespace isoband
