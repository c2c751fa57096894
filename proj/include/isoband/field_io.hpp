#pragma once

#include <cstdint>
#include <filesystem>
#include <vector>

#include "isoband/beltrami.hpp"
#include "isoband/coefficients.hpp"
#include "isoband/metric_field.hpp"

namespace isoband {

/// Grid field file: little-endian float64 payload behind the header
///   "ISOB", u32 version = 1, u32 n1, u32 n2, u32 componentCount,
/// followed by each component as an n1×n2 row-major block.
struct GridFieldFile {
  std::uint32_t n1 = 0;
  std::uint32_t n2 = 0;
  std::vector<RealField> components;
};

inline constexpr std::uint32_t kIsobVersion = 1;

void write_grid_fields(const std::filesystem::path& path, const GridFieldFile& file);
GridFieldFile read_grid_fields(const std::filesystem::path& path);

/// Components (g11, g12, g22).
void write_metric(const std::filesystem::path& path, const MetricField& G);
MetricField read_metric(const std::filesystem::path& path);

/// Components (re, im).
void write_complex_field(const std::filesystem::path& path, const TorusGrid& grid, const ComplexField& f);
ComplexField read_complex_field(const std::filesystem::path& path, TorusGrid* grid = nullptr);

/// Sidecar JSON lives next to the binary file at path + ".json".
std::filesystem::path sidecar_path(const std::filesystem::path& path);

/// (Re pHat, Im pHat) in FFT bin order plus {alpha, beta, kappa, residualL2,
/// iterations, grid} in the sidecar.
void write_map(const std::filesystem::path& path, const IsothermalMap& map);
IsothermalMap read_map(const std::filesystem::path& path);

/// (a1, a2, V, mu) with empty fields written as their defaults (0 or 1),
/// plus {A, deltaLines, deltaCurves, grid} in the sidecar. A variable metric
/// or ω is not stored.
void write_coefficients(const std::filesystem::path& path, const CoefficientSet& coeffs);
CoefficientSet read_coefficients(const std::filesystem::path& path);

}  // namespace isoband
