#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <numbers>
#include <set>
#include <sstream>

#include "doctest.h"
#include "isoband/error.hpp"
#include "isoband/field_io.hpp"
#include "isoband/pipeline.hpp"
#include "isoband/problem_spec.hpp"

using namespace isoband;
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

fs::path scratch_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "isoband_unit_pipeline" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string read_text(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

RunOptions fast() {
  RunOptions o;
  o.verify = VerifyLevel::Fast;
  return o;
}

}  // namespace

TEST_CASE("numbers may be written as multiples of pi") {
  const ProblemSpec p = parse_problem_spec(R"({"deltaLines": [{"y0": "pi/2", "sigma": "2pi"}],
                                               "V": "-0.5*pi"})");
  CHECK(p.deltaLines.at(0).y0 == doctest::Approx(std::numbers::pi / 2).epsilon(1e-15));
  CHECK(p.deltaLines[0].sigma.value == doctest::Approx(2 * std::numbers::pi).epsilon(1e-15));
  CHECK(p.V.value == doctest::Approx(-0.5 * std::numbers::pi).epsilon(1e-15));
}

TEST_CASE("presets merge with overrides") {
  const ProblemSpec p = parse_problem_spec(R"({"preset": "cosine-potential", "solver": {"cutoff": [6, 5]}})");
  CHECK(p.name == "cosine-potential");
  CHECK(p.solver.m1 == 6);
  CHECK(p.solver.m2 == 5);
  CHECK(p.solver.kPoints == 33);
  CHECK(p.V.kind == FieldSpec::Kind::Trig);
  CHECK(p.V.at(0.0, 0.0) == doctest::Approx(3.0));
}

TEST_CASE("every preset parses and validates") {
  std::set<std::string> names;
  for (const PresetInfo& info : preset_catalog()) {
    CAPTURE(info.name);
    const ProblemSpec p = preset(info.name);
    CHECK(p.name == info.name);
    CHECK(p.solver.kPoints == 33);
    names.insert(info.name);
  }
  for (const char* required : {"free-torus", "diag-half-two", "dirichlet-free-strip", "rotated-anisotropic-a",
                               "rotated-anisotropic-b", "rotated-anisotropic-c", "mirror-symmetric"})
    CHECK(names.count(required) == 1);
}

TEST_CASE("malformed descriptions are rejected with a kind") {
  auto kind_of = [](const std::string& text) {
    try {
      parse_problem_spec(text);
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::Structural;
  };
  CHECK(kind_of("{not json") == ErrorKind::Config);
  CHECK(kind_of(R"({"colour": 1})") == ErrorKind::Config);
  CHECK(kind_of(R"({"preset": "no-such-preset"})") == ErrorKind::Config);
  CHECK(kind_of(R"({"solver": {"grid": 48}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"solver": {"grid": 32, "cutoff": 8}})") == ErrorKind::Aliasing);
  CHECK(kind_of(R"({"V": {"kind": "file", "path": "/nonexistent/v.isob"}})") == ErrorKind::Io);
  CHECK(kind_of(R"({"geometry": "strip", "metric": {"kind": "constant", "g12": 0.1}})") == ErrorKind::Config);
  CHECK(kind_of(R"({"geometry": "strip", "robinTop": 1})") == ErrorKind::Config);
  CHECK(kind_of(R"({"metric": {"kind": "constant", "g11": 1, "g12": 2, "g22": 1}})") == ErrorKind::InvalidMetric);
  CHECK(kind_of(R"({"V": 1, "expect": {"closedFormBands": true}})") == ErrorKind::Config);
}

TEST_CASE("free torus reproduces its closed forms") {
  const RunReport r = run_pipeline(preset("free-torus"), fast());
  CHECK(r.passed());
  REQUIRE(r.kappa);
  CHECK(std::abs(*r.kappa - cd(0.0, 2.0 * std::numbers::pi)) < 1e-12);
  CHECK(r.bands.oscillation.at(0) == doctest::Approx(0.25).epsilon(1e-12));
  for (const char* name : {"expect-kappa", "expect-A", "expect-first-band-oscillation", "expect-closed-form-bands",
                           "band-oscillation", "map-periodicity-x1", "map-periodicity-x2"})
    CHECK(r.check(name) != nullptr);
  // Fast verification leaves out the spectral equivalence and identity suites.
  CHECK(r.check("unitary-equivalence") == nullptr);
  CHECK(r.check("identity-beltrami") == nullptr);
}

TEST_CASE("diag(1/2, 2) gives kappa = pi i and the scaled lattice bands") {
  const RunReport r = run_pipeline(preset("diag-half-two"));
  CHECK(r.passed());
  CHECK(std::abs(*r.kappa - cd(0.0, std::numbers::pi)) < 1e-10);
  CHECK(std::abs((*r.A)(0, 0) - 0.5) < 1e-10);
  CHECK(std::abs((*r.A)(1, 1) - 2.0) < 1e-10);
  REQUIRE(r.check("unitary-equivalence"));
  CHECK(r.check("unitary-equivalence")->value < 1e-10);
}

TEST_CASE("a constant metric with determinant 4 is rescaled") {
  // G = 2 diag(1/2, 2) has the same bands as diag(1, 4).
  const RunReport r = run_pipeline(parse_problem_spec(R"({"metric": {"kind": "constant", "g11": 1, "g12": 0, "g22": 4},
      "solver": {"grid": 32, "cutoff": 4, "kPoints": 5, "nBands": 4}, "expect": {"closedFormBands": true}})"));
  CHECK(r.metricScale == doctest::Approx(2.0));
  CHECK(r.passed());
  CHECK(std::abs((*r.A)(1, 1) - 4.0) < 1e-10);
}

TEST_CASE("every check appears once and outputs are written") {
  const fs::path dir = scratch_dir("strip");
  RunOptions o;
  o.outDir = dir;
  const RunReport r = run_pipeline(preset("dirichlet-free-strip"), o);
  CHECK(r.passed());
  std::set<std::string> seen;
  for (const CheckResult& c : r.checks) CHECK(seen.insert(c.name).second);
  for (const char* f : {"bands.csv", "report.json", "coeffs.isob", "coeffs.isob.json"}) CHECK(fs::exists(dir / f));
  CHECK_FALSE(fs::exists(dir / "map.isob"));

  const json report = json::parse(read_text(dir / "report.json"));
  CHECK(report.at("passed").get<bool>());
  CHECK(report.at("checks").size() == r.checks.size());
  CHECK(report.at("reflection").size() == 33);
  CHECK(report.at("bandsCsv") == "bands.csv");

  const std::string csv = read_text(dir / "bands.csv");
  CHECK(csv.rfind("k,band1,band2,band3,band4,band5,band6\n", 0) == 0);

  // The stored doubled problem lives on the cylinder with twice the rows.
  const CoefficientSet doubled = read_coefficients(dir / "coeffs.isob");
  CHECK(doubled.grid.n1() == 64);
  CHECK(doubled.grid.n2() == 64);
}

TEST_CASE("torus outputs include the map") {
  const fs::path dir = scratch_dir("torus");
  RunOptions o = fast();
  o.outDir = dir;
  const RunReport r = run_pipeline(preset("cosine-potential"), o);
  const IsothermalMap map = read_map(dir / "map.isob");
  CHECK(map.kappa == *r.kappa);
  CHECK(fs::exists(dir / "coeffs.isob.json"));
}

TEST_CASE("identical inputs give bit-identical band files for any job count") {
  const ProblemSpec spec = parse_problem_spec(R"({"preset": "mirror-symmetric",
      "solver": {"grid": 64, "cutoff": 6, "kPoints": 9}})");
  auto csv_of = [&](int jobs) {
    RunOptions o = fast();
    o.jobs = jobs;
    std::ostringstream s;
    write_bands_csv(run_pipeline(spec, o).bands, s);
    return s.str();
  };
  const std::string one = csv_of(1);
  CHECK(one == csv_of(1));
  CHECK(one == csv_of(3));
}

TEST_CASE("file-backed fields match their closed forms") {
  const fs::path dir = scratch_dir("files");
  const TorusGrid grid(32, 32);
  const FieldSpec V = parse_problem_spec(R"({"V": {"kind": "trig", "terms": [[1, 2, 0.5, 0.25]]}})").V;
  write_grid_fields(dir / "v.isob", {32, 32, {RealField(grid.size(), 0.0), V.sample(grid)}});

  const ProblemSpec fromFile = load_problem_spec([&] {
    const fs::path p = dir / "spec.json";
    std::ofstream(p) << R"({"V": {"kind": "file", "path": "v.isob", "component": 1},
                            "solver": {"grid": 32, "cutoff": 4, "kPoints": 5, "nBands": 4}})";
    return p;
  }());
  const ProblemSpec closed = parse_problem_spec(R"({"V": {"kind": "trig", "terms": [[1, 2, 0.5, 0.25]]},
      "solver": {"grid": 32, "cutoff": 4, "kPoints": 5, "nBands": 4}})");
  const RunReport a = run_pipeline(fromFile, fast()), b = run_pipeline(closed, fast());
  CHECK(a.bands.bands == b.bands.bands);

  const ProblemSpec wrongGrid = parse_problem_spec(R"({"V": {"kind": "file", "path": ")" +
                                                   (dir / "v.isob").string() + R"("}, "solver": {"grid": 64}})");
  CHECK_THROWS_AS(run_pipeline(wrongGrid, fast()), StageError);
}

TEST_CASE("stage errors carry the stage name") {
  // a2 = cos(x1) does not vanish on the strip edges, which the reflection forbids.
  const ProblemSpec spec = parse_problem_spec(R"({"geometry": "strip", "a2": {"kind": "trig", "terms": [[1, 0, 1]]},
      "solver": {"grid": [32, 16], "cutoff": 4, "kPoints": 3, "nBands": 4}})");
  try {
    run_pipeline(spec, fast());
    FAIL("expected a stage error");
  } catch (const StageError& e) {
    CHECK(e.stage() == "reflection");
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("failed checks are reported, not thrown") {
  // The expected kappa is deliberately wrong.
  const RunReport r = run_pipeline(
      parse_problem_spec(R"({"preset": "free-torus", "expect": {"kappa": [0, 6], "A": null}})"), fast());
  CHECK_FALSE(r.passed());
  REQUIRE(r.check("expect-kappa"));
  CHECK_FALSE(r.check("expect-kappa")->passed);
  CHECK(r.check("expect-closed-form-bands")->passed);
}

TEST_CASE("bench reports medians and scaling ratios") {
  const ProblemSpec spec = parse_problem_spec(R"({"preset": "free-torus", "solver": {"grid": 32, "cutoff": 3, "kPoints": 3}})");
  const BenchReport b = bench(spec, 1);
  CHECK(b.repeat == 1);
  CHECK_FALSE(b.medians.empty());
  CHECK(b.eigensolveRatio > 0.0);
  CHECK(b.eigensolvePredicted == doctest::Approx(std::pow(13.0 * 13.0 / 49.0, 3)));
  REQUIRE(b.beltramiRatio);
  CHECK(b.table().find("eigensolve") != std::string::npos);
}
