#pragma once

#include <array>
#include <utility>
#include <vector>

#include "isoband/grid.hpp"

namespace isoband {

/// One separable term of a real trigonometric series:
///   cc·cos(m x1)cos(n x2) + cs·cos(m x1)sin(n x2) + sc·sin(m x1)cos(n x2) + ss·sin(m x1)sin(n x2)
struct TrigTerm {
  int m = 0;
  int n = 0;
  double cc = 0.0, cs = 0.0, sc = 0.0, ss = 0.0;
};

using TrigSeries = std::vector<TrigTerm>;

double evaluate(const TrigSeries& series, double x1, double x2) noexcept;

/// Partial derivatives (∂1, ∂2) of the series.
std::pair<double, double> gradient(const TrigSeries& series, double x1, double x2) noexcept;

/// Second derivatives (∂11, ∂12, ∂22).
std::array<double, 3> hessian(const TrigSeries& series, double x1, double x2) noexcept;

/// True when the series is even (odd) under x2 → −x2, i.e. uses only the cos(n x2)
/// (respectively sin(n x2)) columns.
bool is_even_in_x2(const TrigSeries& series) noexcept;
bool is_odd_in_x2(const TrigSeries& series) noexcept;

/// Largest |m| and |n| appearing in the series.
std::pair<int, int> bandwidth(const TrigSeries& series) noexcept;

/// Upper bound Σ(|cc|+|cs|+|sc|+|ss|) on the sup norm.
double sup_bound(const TrigSeries& series) noexcept;

}  // namespace isoband
