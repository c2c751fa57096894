#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>

#include "doctest.h"
#include "isoband/error.hpp"
#include "isoband/field_io.hpp"
#include "test_support.hpp"

using namespace isoband;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const char* name) {
  const fs::path dir = fs::temp_directory_path() / "isoband_unit_io";
  fs::create_directories(dir);
  return dir / name;
}

std::vector<unsigned char> bytes_of(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

}  // namespace

TEST_CASE("grid field header layout is little endian") {
  const fs::path p = scratch("layout.isob");
  write_grid_fields(p, {2, 3, {RealField{1, 2, 3, 4, 5, 6}}});
  const auto b = bytes_of(p);
  REQUIRE(b.size() == 20 + 6 * 8);
  CHECK(std::memcmp(b.data(), "ISOB", 4) == 0);
  const unsigned char header[16] = {1, 0, 0, 0, 2, 0, 0, 0, 3, 0, 0, 0, 1, 0, 0, 0};
  CHECK(std::memcmp(b.data() + 4, header, 16) == 0);
  // 1.0 = 0x3FF0000000000000 stored low byte first.
  const unsigned char one[8] = {0, 0, 0, 0, 0, 0, 0xF0, 0x3F};
  CHECK(std::memcmp(b.data() + 20, one, 8) == 0);
  const GridFieldFile back = read_grid_fields(p);
  CHECK(back.n1 == 2);
  CHECK(back.n2 == 3);
  CHECK(back.components[0] == RealField{1, 2, 3, 4, 5, 6});
}

TEST_CASE("metric, map and coefficient files round trip bit for bit") {
  TorusGrid g(16, 8);
  const MetricField G = testsupport::smooth_metric(2, g);
  write_metric(scratch("metric.isob"), G);
  const MetricField G2 = read_metric(scratch("metric.isob"));
  CHECK(G2.g11 == G.g11);
  CHECK(G2.g12 == G.g12);
  CHECK(G2.g22 == G.g22);

  const IsothermalMap map = solve_periodic_beltrami(metric_to_beltrami(G), SolverConfig{});
  write_map(scratch("map.isob"), map);
  CHECK(fs::exists(scratch("map.isob.json")));
  const IsothermalMap m2 = read_map(scratch("map.isob"));
  CHECK(m2.pHat == map.pHat);
  CHECK(m2.alpha == map.alpha);
  CHECK(m2.beta == map.beta);
  CHECK(m2.kappa == map.kappa);
  CHECK(m2.residualL2 == map.residualL2);

  CoefficientSet c(g);
  c.A << 0.5, 0.1, 0.1, 2.5;
  c.V = sample(g, [](double x, double y) { return std::cos(x) * std::sin(y); });
  c.deltaLines.push_back({1.25, RealField(16, 0.75)});
  c.deltaCurves.push_back({{cd(0.1, 0.2), cd(1.0 / 3.0, 2.0)}, {1.0, 2.0}, {0.5, 0.25}});
  write_coefficients(scratch("coeffs.isob"), c);
  const CoefficientSet c2 = read_coefficients(scratch("coeffs.isob"));
  CHECK(c2.A == c.A);
  CHECK(c2.V == c.V);
  CHECK(c2.a1 == RealField(g.size(), 0.0));
  CHECK(c2.mu == RealField(g.size(), 1.0));
  REQUIRE(c2.deltaLines.size() == 1);
  CHECK(c2.deltaLines[0].y0 == 1.25);
  REQUIRE(c2.deltaCurves.size() == 1);
  CHECK(c2.deltaCurves[0].points == c.deltaCurves[0].points);
  CHECK(c2.deltaCurves[0].arcWeights == c.deltaCurves[0].arcWeights);
}

TEST_CASE("malformed grid field files are rejected") {
  const fs::path p = scratch("bad.isob");
  {
    std::ofstream out(p, std::ios::binary);
    out << "NOPE";
  }
  CHECK_THROWS_AS(read_grid_fields(p), Error);
  write_grid_fields(p, {2, 2, {RealField{1, 2, 3, 4}}});
  fs::resize_file(p, fs::file_size(p) - 3);
  try {
    read_grid_fields(p);
    FAIL("expected truncation error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Io);
  }
  write_grid_fields(p, {8, 8, {RealField(64, 1.0)}});
  CHECK_THROWS_AS(read_metric(p), Error);
  CHECK_THROWS_AS(read_grid_fields(scratch("missing.isob")), Error);
  CHECK_THROWS_AS(write_grid_fields(p, {2, 2, {RealField{1, 2, 3}}}), Error);
}
