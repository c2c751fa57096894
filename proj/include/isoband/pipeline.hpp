#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "isoband/floquet.hpp"
#include "isoband/problem_spec.hpp"

namespace isoband {

/// fast: solver residuals, periodicity, symmetry, oscillation, expectations
/// and reflection at three k-points. full adds the identity suite on a
/// doubled grid, the sandwich and unitary equivalence spectra, and
/// reflection at every k-point.
enum class VerifyLevel { Fast, Full };

struct RunOptions {
  VerifyLevel verify = VerifyLevel::Full;
  int jobs = 1;
  std::optional<std::filesystem::path> outDir;  // nothing is written when unset
};

struct CheckResult {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool lowerBound = false;  // passes when value > threshold instead of value <= threshold
  bool passed = false;
};

struct StageTiming {
  std::string stage;
  double ms = 0.0;
};

/// One row of the reflection match table: sorted Dirichlet ∪ Neumann strip
/// eigenvalues against the doubled cylinder at one k.
struct ReflectionRow {
  double k = 0.0;
  std::vector<double> strip, doubled;
  double maxDiff = 0.0;
};

struct RunReport {
  std::string name;
  Geometry geometry = Geometry::Torus;
  VerifyLevel verify = VerifyLevel::Full;
  std::vector<StageTiming> stages;
  std::vector<CheckResult> checks;
  std::vector<std::pair<std::string, double>> residuals;
  std::vector<std::string> notes;

  std::optional<cd> kappa;
  std::optional<Eigen::Matrix2d> A;
  double metricScale = 1.0;
  int beltramiIterations = 0;
  double beltramiResidual = 0.0;

  BandStructure bands;
  std::vector<ReflectionRow> reflection;
  std::filesystem::path bandsCsv;

  /// Records `value <= threshold` (or `value > threshold` for lower bounds);
  /// a repeated name is a Structural error.
  void add_check(const std::string& name, double value, double threshold, bool lowerBound = false);
  const CheckResult* check(const std::string& name) const;
  double stage_ms(const std::string& stage) const;
  bool passed() const;
};

/// Runs the reduction chain for one problem. Any library error escapes as
/// a StageError naming the stage that raised it. With an output directory,
/// writes bands.csv, report.json, coeffs.isob and (torus) map.isob, each
/// binary file with a JSON sidecar.
RunReport run_pipeline(const ProblemSpec& spec, const RunOptions& options = {});

std::string report_json(const RunReport& report);

struct BenchReport {
  int repeat = 0;
  std::vector<StageTiming> medians;
  // Fiber eigensolve time at cutoff 2M over cutoff M, with the dense
  // (basis size)³ prediction.
  double eigensolveRatio = 0.0, eigensolvePredicted = 0.0;
  // Beltrami solve time on the doubled grid over the base grid, with the
  // n² log n prediction; unset for strips.
  std::optional<double> beltramiRatio, beltramiPredicted;

  std::string table() const;
};

BenchReport bench(const ProblemSpec& spec, int repeat, int jobs = 1);

}  // namespace isoband
