#include "isoband/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <json.hpp>
#include <random>
#include <sstream>

#include "isoband/beltrami.hpp"
#include "isoband/boundary.hpp"
#include "isoband/error.hpp"
#include "isoband/field_io.hpp"
#include "isoband/isothermal_map.hpp"
#include "isoband/pushforward.hpp"
#include "isoband/sandwich.hpp"

namespace isoband {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

constexpr double kPeriodicityTol = 1e-8;
constexpr double kIdentityTol = 1e-6;
constexpr double kEquivalenceTol = 1e-4;
constexpr double kSandwichTol = 1e-6;
constexpr double kReflectionTol = 1e-8;
constexpr double kOscillationFloor = 1e-6;
constexpr int kPeriodicitySamples = 1000;

template <class F>
auto timed(RunReport& report, const char* stage, F&& body) {
  const auto t0 = Clock::now();
  auto finish = [&] {
    report.stages.push_back({stage, std::chrono::duration<double, std::milli>(Clock::now() - t0).count()});
  };
  try {
    if constexpr (std::is_void_v<decltype(body())>) {
      body();
      finish();
    } else {
      auto out = body();
      finish();
      return out;
    }
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(stage, e);
  } catch (const std::exception& e) {
    throw StageError(stage, Error(ErrorKind::Numerical, e.what()));
  }
}

std::vector<double> probe_k_points(const std::vector<double>& kGrid) {
  std::vector<double> out{kGrid.front()};
  if (kGrid.size() > 2) out.push_back(kGrid[kGrid.size() / 2]);
  if (kGrid.size() > 1) out.push_back(kGrid.back());
  return out;
}

double worst_band_difference(const BandStructure& a, const BandStructure& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.bands.size(); ++i)
    for (std::size_t j = 0; j < a.bands[i].size(); ++j)
      worst = std::max(worst, std::abs(a.bands[i][j] - b.bands[i][j]));
  return worst;
}

bool mirror_symmetric(const MetricField& G) {
  const TorusGrid& g = G.grid;
  const double tol = 1e-12 * std::max(1.0, G.C);
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) {
      const std::size_t s = g.index(i, j), t = g.index(i, (g.n2() - j) % g.n2());
      if (std::abs(G.g11[s] - G.g11[t]) > tol || std::abs(G.g22[s] - G.g22[t]) > tol ||
          std::abs(G.g12[s] + G.g12[t]) > tol)
        return false;
    }
  return true;
}

void check_oscillation(RunReport& report) {
  const OscillationReport osc = band_oscillation(report.bands, kOscillationFloor);
  const double smallest =
      osc.oscillation.empty() ? 0.0 : *std::min_element(osc.oscillation.begin(), osc.oscillation.end());
  report.add_check("band-oscillation", smallest, kOscillationFloor, true);
}

void check_expectations(RunReport& report, const ProblemSpec& spec, const std::vector<double>& kGrid) {
  const Expectations& e = spec.expect;
  if (e.kappa) report.add_check("expect-kappa", report.kappa ? std::abs(*report.kappa - *e.kappa) : INFINITY, e.tolerance);
  if (e.A) report.add_check("expect-A", report.A ? (*report.A - *e.A).cwiseAbs().maxCoeff() : INFINITY, e.tolerance);
  if (e.firstBandOscillation) {
    const double osc = report.bands.oscillation.empty() ? INFINITY : report.bands.oscillation.front();
    report.add_check("expect-first-band-oscillation", std::abs(osc - *e.firstBandOscillation), e.tolerance);
  }
  if (e.closedFormBands) {
    const Eigen::Matrix2d G = spec.metric.constant_value();
    const Cutoff cutoff(spec.solver.m1, spec.solver.m2);
    double worst = 0.0;
    for (std::size_t i = 0; i < kGrid.size(); ++i) {
      const std::vector<double> levels =
          spec.geometry == Geometry::Torus
              ? constant_metric_levels(G, kGrid[i], cutoff, spec.solver.nBands)
              : separable_strip_levels(G.diagonal(), spec.bc, kGrid[i], cutoff, spec.solver.nBands);
      for (std::size_t j = 0; j < levels.size(); ++j)
        worst = std::max(worst, std::abs(report.bands.bands[i][j] - levels[j]));
    }
    report.add_check("expect-closed-form-bands", worst, e.tolerance);
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
}

void write_bands(RunReport& report, const std::filesystem::path& dir) {
  std::ostringstream csv;
  write_bands_csv(report.bands, csv);
  report.bandsCsv = dir / "bands.csv";
  write_text(report.bandsCsv, csv.str());
}

RealField optional_field(const FieldSpec& f, const TorusGrid& grid) {
  return f.is_zero() ? RealField{} : f.sample(grid);
}
RealField optional_field(const FieldSpec& f, const StripGrid& grid) {
  return f.is_zero() ? RealField{} : f.sample(grid);
}

void run_torus(const ProblemSpec& spec, const RunOptions& options, RunReport& report) {
  const SolverSpec& s = spec.solver;
  const bool full = options.verify == VerifyLevel::Full;
  const Cutoff cutoff(s.m1, s.m2);
  const std::vector<double> kGrid = spec.k_grid();
  const TorusGrid grid(s.n1, s.n2);

  CoefficientSet weighted = timed(report, "setup", [&] {
    CoefficientSet c(grid);
    c.G = spec.metric.sample(grid);
    c.V = optional_field(spec.V, grid);
    c.a1 = optional_field(spec.a1, grid);
    c.a2 = optional_field(spec.a2, grid);
    if (spec.mu) c.mu = spec.mu->sample(grid);
    if (spec.omega) {
      c.omega = spec.omega->sample(grid);
      // The weighted Gram form is ∫ ω² μ |u|².
      if (c.mu.empty()) c.mu.assign(grid.size(), 1.0);
      for (std::size_t i = 0; i < grid.size(); ++i) c.mu[i] *= c.omega[i] * c.omega[i];
    }
    for (const DeltaLineSpec& d : spec.deltaLines) c.deltaLines.push_back({d.y0, d.sigma.sample_line(s.n1, d.y0)});
    c.validate();
    return c;
  });

  const MetricField Gn = timed(report, "metric", [&] {
    const ValidationReport v = validate_metric(*weighted.G);
    for (const auto& m : v.measurements) report.residuals.emplace_back("metric-" + m.first, m.second);
    if (!v.passed) {
      const Violation& bad = v.violations.front();
      throw Error(ErrorKind::InvalidMetric, "metric fails " + bad.rule + " at sample (" + std::to_string(bad.i) +
                                                ", " + std::to_string(bad.j) + ")");
    }
    return normalize_det(*weighted.G, &report.metricScale);
  });

  CoefficientSet reduced = weighted;
  if (spec.omega)
    reduced = timed(report, "sandwich", [&] {
      if (full) {
        const ValidationReport v = verify_sandwich(weighted, probe_k_points(kGrid), s.nBands, cutoff, kSandwichTol,
                                                   options.jobs);
        report.add_check("sandwich-equivalence", v.measurement("sandwich"), kSandwichTol);
      }
      return sandwich_reduce(weighted);
    });

  const IsothermalMap map = timed(report, "beltrami", [&] {
    SolverConfig cfg;
    cfg.tolerance = s.tolerance;
    cfg.maxIterations = s.maxIterations;
    cfg.dealias = s.dealias;
    return solve_periodic_beltrami(metric_to_beltrami(Gn), cfg);
  });
  report.kappa = map.kappa;
  report.beltramiIterations = map.iterations;
  report.beltramiResidual = map.residualL2;
  report.residuals.emplace_back("beltrami", map.residualL2);
  report.add_check("beltrami-residual", map.residualL2, s.tolerance);

  const RenormalizedMap rmap = timed(report, "renormalize", [&] { return renormalize(map); });
  report.A = report.metricScale * rmap.A;
  report.add_check("lattice-periodicity", rmap.periodicityResidual, kPeriodicityTol);

  timed(report, "periodicity", [&] {
    const MapEvaluator eval(map);
    std::mt19937_64 rng(spec.seed);
    std::uniform_real_distribution<double> unit(0.0, kTwoPi);
    double e1 = 0.0, e2 = 0.0;
    for (int t = 0; t < kPeriodicitySamples; ++t) {
      const cd z(unit(rng), unit(rng));
      const cd f = eval.evaluate(z);
      e1 = std::max(e1, std::abs(eval.evaluate(z + kTwoPi) - f - kTwoPi));
      e2 = std::max(e2, std::abs(eval.evaluate(z + cd(0.0, kTwoPi)) - f - map.kappa));
    }
    report.add_check("map-periodicity-x1", e1, kPeriodicityTol);
    report.add_check("map-periodicity-x2", e2, kPeriodicityTol);
    if (mirror_symmetric(Gn)) {
      report.add_check("mirror-kappa-real", std::abs(map.kappa.real()), kPeriodicityTol);
      const double half = eval.evaluate(cd(0.0, std::numbers::pi)).imag();
      report.add_check("mirror-kappa-midpoint", std::abs(map.kappa - cd(0.0, 2.0 * half)), kPeriodicityTol);
    }
  });

  if (full)
    timed(report, "identities", [&] {
      const ValidationReport v = verify_identities(map, Gn, TorusGrid(2 * s.n1, 2 * s.n2), kIdentityTol);
      for (const auto& [name, value] : v.measurements) {
        report.residuals.emplace_back("identity-" + name, value);
        report.add_check("identity-" + name, value, kIdentityTol);
      }
    });

  CoefficientSet pushed = timed(report, "pushforward", [&] {
    PushforwardOptions po;
    po.jobs = options.jobs;
    CoefficientSet out = pushforward(rmap, reduced, po);
    out.A *= report.metricScale;
    return out;
  });

  if (full)
    timed(report, "equivalence", [&] {
      const std::vector<double> probe = probe_k_points(kGrid);
      const BandStructure src = solve_bands(reduced, probe, s.nBands, cutoff, options.jobs);
      const BandStructure dst = solve_bands(pushed, probe, s.nBands, cutoff, options.jobs);
      const double diff = worst_band_difference(src, dst);
      report.residuals.emplace_back("unitary-equivalence", diff);
      report.add_check("unitary-equivalence", diff, kEquivalenceTol);
    });

  report.bands = timed(report, "bands", [&] { return solve_bands(pushed, kGrid, s.nBands, cutoff, options.jobs); });
  check_oscillation(report);
  check_expectations(report, spec, kGrid);

  if (options.outDir)
    timed(report, "write", [&] {
      write_bands(report, *options.outDir);
      write_map(*options.outDir / "map.isob", map);
      write_coefficients(*options.outDir / "coeffs.isob", pushed);
    });
}

CoefficientSet doubled_coefficients(const DoubledProblem& dp) {
  CoefficientSet c(dp.grid);
  c.A = dp.B.asDiagonal();
  c.a1 = dp.b1;
  c.a2 = dp.b2;
  c.V = dp.Q;
  c.deltaLines = dp.rho;
  return c;
}

void run_strip(const ProblemSpec& spec, const RunOptions& options, RunReport& report) {
  const SolverSpec& s = spec.solver;
  const bool full = options.verify == VerifyLevel::Full;
  const Cutoff cutoff(s.m1, s.m2);
  const std::vector<double> kGrid = spec.k_grid();
  const StripGrid grid(s.n1, s.n2);
  const Eigen::Matrix2d G = spec.metric.constant_value();
  const bool neumann = spec.bc == BoundaryCondition::Neumann;

  StripProblem sp = timed(report, "setup", [&] {
    StripProblem p(grid);
    p.bc = spec.bc;
    p.B = G.diagonal();
    p.V = optional_field(spec.V, grid);
    p.a1 = optional_field(spec.a1, grid);
    p.a2 = optional_field(spec.a2, grid);
    if (spec.robinBottom) p.robinBottom = spec.robinBottom->sample_line(s.n1, 0.0);
    if (spec.robinTop) p.robinTop = spec.robinTop->sample_line(s.n1, std::numbers::pi);
    for (const DeltaLineSpec& d : spec.deltaLines) p.deltaLines.push_back({d.y0, d.sigma.sample_line(s.n1, d.y0)});
    p.validate();
    return p;
  });

  if (spec.omega)
    timed(report, "sandwich", [&] {
      const RealField omega = spec.omega->sample(grid);
      const RealField V = sp.V;
      const SandwichReduction red = sandwich_reduce(grid, omega, G, V);
      sp.V = red.V;
      if (neumann) {
        auto accumulate = [&](RealField& target, const RealField& add) {
          if (target.empty()) target.assign(add.size(), 0.0);
          for (std::size_t i = 0; i < add.size(); ++i) target[i] += add[i];
        };
        accumulate(sp.robinBottom, red.sigmaBottom);
        accumulate(sp.robinTop, red.sigmaTop);
      }
      const bool plain = sp.a1.empty() && sp.a2.empty() && sp.deltaLines.empty() && !spec.robinBottom && !spec.robinTop;
      if (full && plain) {
        const ValidationReport v =
            verify_sandwich(grid, spec.bc, G, omega, V, probe_k_points(kGrid), s.nBands, cutoff, kSandwichTol,
                            options.jobs);
        report.add_check("sandwich-equivalence", v.measurement("sandwich"), kSandwichTol);
      } else if (full) {
        report.notes.push_back("sandwich spectra not compared: the weighted strip assembly covers V and omega only");
      }
    });

  const std::vector<double> reflectionK = full ? kGrid : probe_k_points(kGrid);
  const ReflectionReport rr = timed(report, "reflection", [&] {
    return verify_reflection_equivalence(sp, reflectionK, s.nBands, cutoff, kReflectionTol, options.jobs);
  });
  for (const auto& [name, value] : rr.summary.measurements) {
    report.residuals.emplace_back("reflection-" + name, value);
    report.add_check("reflection-" + name, value, kReflectionTol);
  }
  for (std::size_t i = 0; i < reflectionK.size(); ++i) {
    ReflectionRow row;
    row.k = reflectionK[i];
    row.strip = rr.dirichlet.bands[i];
    row.strip.insert(row.strip.end(), rr.neumann.bands[i].begin(), rr.neumann.bands[i].end());
    std::sort(row.strip.begin(), row.strip.end());
    row.strip.resize(s.nBands);
    row.doubled = rr.doubled.bands[i];
    for (int j = 0; j < s.nBands; ++j) row.maxDiff = std::max(row.maxDiff, std::abs(row.strip[j] - row.doubled[j]));
    report.reflection.push_back(std::move(row));
  }

  report.bands = timed(report, "bands", [&] {
    if (full) return neumann ? rr.neumann : rr.dirichlet;
    return solve_bands(strip_assembler(sp, cutoff), kGrid, s.nBands, options.jobs);
  });
  check_oscillation(report);
  check_expectations(report, spec, kGrid);

  if (options.outDir)
    timed(report, "write", [&] {
      write_bands(report, *options.outDir);
      write_coefficients(*options.outDir / "coeffs.isob", doubled_coefficients(reflect_coefficients(sp)));
    });
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }

}  // namespace

void RunReport::add_check(const std::string& name, double value, double threshold, bool lowerBound) {
  if (check(name)) throw Error(ErrorKind::Structural, "check " + name + " recorded twice");
  const bool ok = lowerBound ? value > threshold : value <= threshold;
  checks.push_back({name, value, threshold, lowerBound, ok});
}

const CheckResult* RunReport::check(const std::string& name) const {
  for (const CheckResult& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

double RunReport::stage_ms(const std::string& stage) const {
  for (const StageTiming& t : stages)
    if (t.stage == stage) return t.ms;
  return 0.0;
}

bool RunReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

RunReport run_pipeline(const ProblemSpec& spec, const RunOptions& options) {
  spec.validate();
  RunReport report;
  report.name = spec.name;
  report.geometry = spec.geometry;
  report.verify = options.verify;
  if (options.outDir) {
    std::error_code ec;
    std::filesystem::create_directories(*options.outDir, ec);
    if (ec) throw Error(ErrorKind::Io, "cannot create " + options.outDir->string() + ": " + ec.message());
  }
  if (spec.geometry == Geometry::Torus) run_torus(spec, options, report);
  else run_strip(spec, options, report);
  if (options.outDir) write_text(*options.outDir / "report.json", report_json(report));
  return report;
}

std::string report_json(const RunReport& r) {
  json j;
  j["name"] = r.name;
  j["geometry"] = r.geometry == Geometry::Torus ? "torus" : "strip";
  j["verify"] = r.verify == VerifyLevel::Full ? "full" : "fast";
  j["passed"] = r.passed();
  json stages = json::array();
  for (const StageTiming& t : r.stages) stages.push_back({{"stage", t.stage}, {"ms", t.ms}});
  j["stages"] = stages;
  json residuals = json::object();
  for (const auto& [name, value] : r.residuals) residuals[name] = value;
  j["residuals"] = residuals;
  if (r.kappa) j["kappa"] = complex_json(*r.kappa);
  if (r.A) j["A"] = {{(*r.A)(0, 0), (*r.A)(0, 1)}, {(*r.A)(1, 0), (*r.A)(1, 1)}};
  if (r.geometry == Geometry::Torus) {
    j["metricScale"] = r.metricScale;
    j["beltrami"] = {{"iterations", r.beltramiIterations}, {"residualL2", r.beltramiResidual}};
  }
  j["bandsCsv"] = r.bandsCsv.empty() ? json(nullptr) : json(r.bandsCsv.filename().string());
  j["oscillation"] = r.bands.oscillation;
  json checks = json::array();
  for (const CheckResult& c : r.checks)
    checks.push_back({{"name", c.name},
                      {"value", c.value},
                      {"threshold", c.threshold},
                      {"relation", c.lowerBound ? ">" : "<="},
                      {"passed", c.passed}});
  j["checks"] = checks;
  if (!r.reflection.empty()) {
    json rows = json::array();
    for (const ReflectionRow& row : r.reflection)
      rows.push_back({{"k", row.k}, {"strip", row.strip}, {"doubled", row.doubled}, {"maxDiff", row.maxDiff}});
    j["reflection"] = rows;
  }
  if (!r.notes.empty()) j["notes"] = r.notes;
  return j.dump(2) + "\n";
}

namespace {

double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

template <class F>
double best_ms(int repeat, F&& body) {
  std::vector<double> t;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = Clock::now();
    body();
    t.push_back(std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return median(t);
}

int next_power_of_two(int n) {
  int p = 8;
  while (p < n) p *= 2;
  return p;
}

// Time for assembling and solving one fiber at cutoff m, on a grid large
// enough not to alias it.
double fiber_solve_ms(const ProblemSpec& spec, int m1, int m2, int repeat) {
  const std::vector<double> k{0.25};
  const int nBands = spec.solver.nBands;
  if (spec.geometry == Geometry::Strip) {
    const StripGrid grid(std::max(spec.solver.n1, next_power_of_two(2 * (2 * m1 + 1))),
                         std::max(spec.solver.n2, next_power_of_two(2 * m2 + 1)));
    StripProblem sp(grid);
    sp.bc = spec.bc;
    sp.B = spec.metric.constant_value().diagonal();
    if (spec.V.closed_form() && !spec.V.is_zero()) sp.V = spec.V.sample(grid);
    const FiberAssembler assembler = strip_assembler(sp, Cutoff(m1, m2));
    return best_ms(repeat, [&] { solve_bands(assembler, k, nBands); });
  }
  const TorusGrid grid(std::max(spec.solver.n1, next_power_of_two(2 * (2 * m1 + 1))),
                       std::max(spec.solver.n2, next_power_of_two(2 * (2 * m2 + 1))));
  CoefficientSet c(grid);
  if (spec.metric.kind != MetricSpec::Kind::File) c.G = spec.metric.sample(grid);
  if (spec.V.closed_form() && !spec.V.is_zero()) c.V = spec.V.sample(grid);
  const FiberAssembler assembler(c, Cutoff(m1, m2));
  return best_ms(repeat, [&] { solve_bands(assembler, k, nBands); });
}

double beltrami_ms(const MetricSpec& metric, int n1, int n2, int repeat) {
  const BeltramiCoefficient q = metric_to_beltrami(normalize_det(metric.sample(TorusGrid(n1, n2))));
  return best_ms(repeat, [&] { solve_periodic_beltrami(q); });
}

}  // namespace

BenchReport bench(const ProblemSpec& spec, int repeat, int jobs) {
  if (repeat < 1) throw Error(ErrorKind::Config, "bench needs repeat >= 1");
  BenchReport out;
  out.repeat = repeat;
  std::vector<std::string> order;
  std::vector<std::vector<double>> samples;
  RunOptions options;
  options.verify = VerifyLevel::Fast;
  options.jobs = jobs;
  for (int r = 0; r < repeat; ++r) {
    const RunReport rep = run_pipeline(spec, options);
    for (const StageTiming& t : rep.stages) {
      auto it = std::find(order.begin(), order.end(), t.stage);
      if (it == order.end()) {
        order.push_back(t.stage);
        samples.emplace_back();
        it = order.end() - 1;
      }
      samples[it - order.begin()].push_back(t.ms);
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) out.medians.push_back({order[i], median(samples[i])});

  const int m1 = spec.solver.m1, m2 = spec.solver.m2;
  const double base = fiber_solve_ms(spec, m1, m2, repeat);
  out.eigensolveRatio = fiber_solve_ms(spec, 2 * m1, 2 * m2, repeat) / base;
  const bool strip = spec.geometry == Geometry::Strip;
  const double size1 = (2.0 * m1 + 1) * (strip ? m2 + 1.0 : 2.0 * m2 + 1);
  const double size2 = (4.0 * m1 + 1) * (strip ? 2.0 * m2 + 1 : 4.0 * m2 + 1);
  out.eigensolvePredicted = std::pow(size2 / size1, 3);

  if (!strip && spec.metric.kind != MetricSpec::Kind::File) {
    const int n1 = spec.solver.n1, n2 = spec.solver.n2;
    out.beltramiRatio = beltrami_ms(spec.metric, 2 * n1, 2 * n2, repeat) / beltrami_ms(spec.metric, n1, n2, repeat);
    const double N = static_cast<double>(n1) * n2;
    out.beltramiPredicted = 4.0 * std::log(4.0 * N) / std::log(N);
  }
  return out;
}

std::string BenchReport::table() const {
  std::ostringstream os;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %12s\n", "stage", "median ms");
  os << line;
  for (const StageTiming& t : medians) {
    std::snprintf(line, sizeof line, "%-16s %12.3f\n", t.stage.c_str(), t.ms);
    os << line;
  }
  std::snprintf(line, sizeof line, "eigensolve time ratio, cutoff doubled: %.2f (dense prediction %.1f)\n",
                eigensolveRatio, eigensolvePredicted);
  os << line;
  if (beltramiRatio) {
    std::snprintf(line, sizeof line, "Beltrami time ratio, grid doubled: %.2f (n^2 log n prediction %.2f)\n",
                  *beltramiRatio, *beltramiPredicted);
    os << line;
  }
  std::snprintf(line, sizeof line, "repeats: %d\n", repeat);
  os << line;
  return os.str();
}

}  // namespace isoband
