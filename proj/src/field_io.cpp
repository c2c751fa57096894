#include "isoband/field_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>
#include <json.hpp>

#include "isoband/error.hpp"

namespace isoband {
namespace {

using nlohmann::json;

void put_u32(std::ostream& out, std::uint32_t v) {
  std::array<char, 4> b;
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFFu);
  out.write(b.data(), 4);
}

void put_f64(std::ostream& out, double v) {
  const auto bits = std::bit_cast<std::uint64_t>(v);
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((bits >> (8 * i)) & 0xFFu);
  out.write(b.data(), 8);
}

std::uint64_t get_bytes(std::istream& in, int count, const std::filesystem::path& path) {
  std::array<unsigned char, 8> b{};
  if (!in.read(reinterpret_cast<char*>(b.data()), count))
    throw Error(ErrorKind::Io, "truncated grid field file " + path.string());
  std::uint64_t v = 0;
  for (int i = 0; i < count; ++i) v |= static_cast<std::uint64_t>(b[i]) << (8 * i);
  return v;
}

json complex_json(cd z) { return json::array({z.real(), z.imag()}); }
cd json_complex(const json& j) { return {j.at(0).get<double>(), j.at(1).get<double>()}; }

json grid_json(const TorusGrid& g) { return json::array({g.n1(), g.n2()}); }
TorusGrid json_grid(const json& j) { return TorusGrid(j.at(0).get<int>(), j.at(1).get<int>()); }

void write_json(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << j.dump(2) << '\n';
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, "malformed JSON in " + path.string() + ": " + e.what());
  }
}

TorusGrid file_grid(const GridFieldFile& f) { return TorusGrid(static_cast<int>(f.n1), static_cast<int>(f.n2)); }

void expect_components(const GridFieldFile& f, std::size_t count, const std::filesystem::path& path) {
  if (f.components.size() != count)
    throw Error(ErrorKind::Io, path.string() + " holds " + std::to_string(f.components.size()) +
                                   " components, expected " + std::to_string(count));
}

RealField or_constant(const RealField& f, std::size_t n, double value) {
  return f.empty() ? RealField(n, value) : f;
}

}  // namespace

void write_grid_fields(const std::filesystem::path& path, const GridFieldFile& file) {
  const std::size_t n = static_cast<std::size_t>(file.n1) * file.n2;
  for (const RealField& c : file.components)
    if (c.size() != n) throw Error(ErrorKind::Structural, "component size does not match n1*n2");
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out.write("ISOB", 4);
  put_u32(out, kIsobVersion);
  put_u32(out, file.n1);
  put_u32(out, file.n2);
  put_u32(out, static_cast<std::uint32_t>(file.components.size()));
  for (const RealField& c : file.components)
    for (double v : c) put_f64(out, v);
  if (!out) throw Error(ErrorKind::Io, "write failed for " + path.string());
}

GridFieldFile read_grid_fields(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || std::memcmp(magic, "ISOB", 4) != 0)
    throw Error(ErrorKind::Io, path.string() + " is not a grid field file");
  const auto version = static_cast<std::uint32_t>(get_bytes(in, 4, path));
  if (version != kIsobVersion) throw Error(ErrorKind::Io, "unsupported grid field version " + std::to_string(version));
  GridFieldFile f;
  f.n1 = static_cast<std::uint32_t>(get_bytes(in, 4, path));
  f.n2 = static_cast<std::uint32_t>(get_bytes(in, 4, path));
  const auto count = static_cast<std::uint32_t>(get_bytes(in, 4, path));
  const std::size_t n = static_cast<std::size_t>(f.n1) * f.n2;
  f.components.assign(count, RealField(n));
  for (RealField& c : f.components)
    for (double& v : c) v = std::bit_cast<double>(get_bytes(in, 8, path));
  if (in.peek() != std::char_traits<char>::eof()) throw Error(ErrorKind::Io, "trailing bytes in " + path.string());
  return f;
}

void write_metric(const std::filesystem::path& path, const MetricField& G) {
  write_grid_fields(path, {static_cast<std::uint32_t>(G.grid.n1()), static_cast<std::uint32_t>(G.grid.n2()),
                           {G.g11, G.g12, G.g22}});
}

MetricField read_metric(const std::filesystem::path& path) {
  GridFieldFile f = read_grid_fields(path);
  expect_components(f, 3, path);
  return MetricField::from_samples(file_grid(f), std::move(f.components[0]), std::move(f.components[1]),
                                   std::move(f.components[2]));
}

void write_complex_field(const std::filesystem::path& path, const TorusGrid& grid, const ComplexField& f) {
  if (f.size() != grid.size()) throw Error(ErrorKind::Structural, "field does not match grid");
  GridFieldFile file{static_cast<std::uint32_t>(grid.n1()), static_cast<std::uint32_t>(grid.n2()),
                     {RealField(f.size()), RealField(f.size())}};
  for (std::size_t s = 0; s < f.size(); ++s) {
    file.components[0][s] = f[s].real();
    file.components[1][s] = f[s].imag();
  }
  write_grid_fields(path, file);
}

ComplexField read_complex_field(const std::filesystem::path& path, TorusGrid* grid) {
  const GridFieldFile f = read_grid_fields(path);
  expect_components(f, 2, path);
  if (grid) *grid = file_grid(f);
  ComplexField out(f.components[0].size());
  for (std::size_t s = 0; s < out.size(); ++s) out[s] = {f.components[0][s], f.components[1][s]};
  return out;
}

std::filesystem::path sidecar_path(const std::filesystem::path& path) {
  std::filesystem::path p = path;
  p += ".json";
  return p;
}

void write_map(const std::filesystem::path& path, const IsothermalMap& map) {
  write_complex_field(path, map.grid, map.pHat);
  write_json(sidecar_path(path), json{{"alpha", complex_json(map.alpha)},
                                      {"beta", complex_json(map.beta)},
                                      {"kappa", complex_json(map.kappa)},
                                      {"residualL2", map.residualL2},
                                      {"iterations", map.iterations},
                                      {"grid", grid_json(map.grid)}});
}

IsothermalMap read_map(const std::filesystem::path& path) {
  TorusGrid grid(8, 8);
  ComplexField pHat = read_complex_field(path, &grid);
  const json side = read_json(sidecar_path(path));
  try {
    if (!(json_grid(side.at("grid")) == grid)) throw Error(ErrorKind::Io, "map sidecar grid disagrees with the data");
    IsothermalMap map{grid};
    map.pHat = std::move(pHat);
    map.alpha = json_complex(side.at("alpha"));
    map.beta = json_complex(side.at("beta"));
    map.kappa = json_complex(side.at("kappa"));
    map.residualL2 = side.at("residualL2").get<double>();
    map.iterations = side.value("iterations", 0);
    return map;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, "malformed map sidecar: " + std::string(e.what()));
  }
}

void write_coefficients(const std::filesystem::path& path, const CoefficientSet& c) {
  const std::size_t n = c.grid.size();
  write_grid_fields(path, {static_cast<std::uint32_t>(c.grid.n1()), static_cast<std::uint32_t>(c.grid.n2()),
                           {or_constant(c.a1, n, 0.0), or_constant(c.a2, n, 0.0), or_constant(c.V, n, 0.0),
                            or_constant(c.mu, n, 1.0)}});
  json lines = json::array(), curves = json::array();
  for (const DeltaLine& d : c.deltaLines) lines.push_back({{"y0", d.y0}, {"sigma", d.sigma}});
  for (const DeltaCurve& d : c.deltaCurves) {
    json pts = json::array();
    for (cd p : d.points) pts.push_back(complex_json(p));
    curves.push_back({{"points", pts}, {"sigma", d.sigma}, {"arcWeights", d.arcWeights}});
  }
  write_json(sidecar_path(path), json{{"A", {{c.A(0, 0), c.A(0, 1)}, {c.A(1, 0), c.A(1, 1)}}},
                                      {"deltaLines", lines},
                                      {"deltaCurves", curves},
                                      {"grid", grid_json(c.grid)}});
}

CoefficientSet read_coefficients(const std::filesystem::path& path) {
  GridFieldFile f = read_grid_fields(path);
  expect_components(f, 4, path);
  CoefficientSet c(file_grid(f));
  c.a1 = std::move(f.components[0]);
  c.a2 = std::move(f.components[1]);
  c.V = std::move(f.components[2]);
  c.mu = std::move(f.components[3]);
  const json side = read_json(sidecar_path(path));
  try {
    const json& A = side.at("A");
    c.A << A.at(0).at(0).get<double>(), A.at(0).at(1).get<double>(), A.at(1).at(0).get<double>(),
        A.at(1).at(1).get<double>();
    for (const json& d : side.value("deltaLines", json::array()))
      c.deltaLines.push_back({d.at("y0").get<double>(), d.at("sigma").get<RealField>()});
    for (const json& d : side.value("deltaCurves", json::array())) {
      DeltaCurve curve;
      for (const json& p : d.at("points")) curve.points.push_back(json_complex(p));
      curve.sigma = d.at("sigma").get<RealField>();
      curve.arcWeights = d.at("arcWeights").get<RealField>();
      c.deltaCurves.push_back(std::move(curve));
    }
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Io, "malformed coefficient sidecar: " + std::string(e.what()));
  }
  c.validate();
  return c;
}

}  // namespace isoband
