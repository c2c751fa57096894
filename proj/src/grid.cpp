#include "isoband/grid.hpp"

#include <string>

#include "isoband/error.hpp"

namespace isoband {

bool is_power_of_two(int n) noexcept { return n > 0 && (n & (n - 1)) == 0; }

TorusGrid::TorusGrid(int n1, int n2) : n1_(n1), n2_(n2) {
  if (!is_power_of_two(n1) || !is_power_of_two(n2) || n1 < 8 || n2 < 8)
    throw Error(ErrorKind::Structural, "torus grid sizes must be powers of two >= 8, got " +
                                           std::to_string(n1) + "x" + std::to_string(n2));
}

StripGrid::StripGrid(int n1, int n2) : n1_(n1), n2_(n2) {
  if (!is_power_of_two(n1) || !is_power_of_two(n2) || n1 < 8 || n2 < 8)
    throw Error(ErrorKind::Structural, "strip grid sizes must be powers of two >= 8, got " +
                                           std::to_string(n1) + "x" + std::to_string(n2));
}

}  // namespace isoband
