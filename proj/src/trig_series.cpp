#include "isoband/trig_series.hpp"

#include <cmath>
#include <algorithm>
#include <cstdlib>

namespace isoband {

double evaluate(const TrigSeries& series, double x1, double x2) noexcept {
  double sum = 0.0;
  for (const TrigTerm& t : series) {
    const double c1 = std::cos(t.m * x1), s1 = std::sin(t.m * x1);
    const double c2 = std::cos(t.n * x2), s2 = std::sin(t.n * x2);
    sum += t.cc * c1 * c2 + t.cs * c1 * s2 + t.sc * s1 * c2 + t.ss * s1 * s2;
  }
  return sum;
}

std::pair<double, double> gradient(const TrigSeries& series, double x1, double x2) noexcept {
  double d1 = 0.0, d2 = 0.0;
  for (const TrigTerm& t : series) {
    const double c1 = std::cos(t.m * x1), s1 = std::sin(t.m * x1);
    const double c2 = std::cos(t.n * x2), s2 = std::sin(t.n * x2);
    d1 += t.m * (-t.cc * s1 * c2 - t.cs * s1 * s2 + t.sc * c1 * c2 + t.ss * c1 * s2);
    d2 += t.n * (-t.cc * c1 * s2 + t.cs * c1 * c2 - t.sc * s1 * s2 + t.ss * s1 * c2);
  }
  return {d1, d2};
}

std::array<double, 3> hessian(const TrigSeries& series, double x1, double x2) noexcept {
  double h11 = 0.0, h12 = 0.0, h22 = 0.0;
  for (const TrigTerm& t : series) {
    const double c1 = std::cos(t.m * x1), s1 = std::sin(t.m * x1);
    const double c2 = std::cos(t.n * x2), s2 = std::sin(t.n * x2);
    const double f = t.cc * c1 * c2 + t.cs * c1 * s2 + t.sc * s1 * c2 + t.ss * s1 * s2;
    h11 -= t.m * t.m * f;
    h22 -= t.n * t.n * f;
    h12 += t.m * t.n * (t.cc * s1 * s2 - t.cs * s1 * c2 - t.sc * c1 * s2 + t.ss * c1 * c2);
  }
  return {h11, h12, h22};
}

bool is_even_in_x2(const TrigSeries& series) noexcept {
  for (const TrigTerm& t : series)
    if (t.n != 0 && (t.cs != 0.0 || t.ss != 0.0)) return false;
  return true;
}

bool is_odd_in_x2(const TrigSeries& series) noexcept {
  for (const TrigTerm& t : series)
    if (t.cc != 0.0 || t.sc != 0.0) return false;
  return true;
}

std::pair<int, int> bandwidth(const TrigSeries& series) noexcept {
  int m = 0, n = 0;
  for (const TrigTerm& t : series) {
    m = std::max(m, std::abs(t.m));
    n = std::max(n, std::abs(t.n));
  }
  return {m, n};
}

double sup_bound(const TrigSeries& series) noexcept {
  double s = 0.0;
  for (const TrigTerm& t : series) s += std::abs(t.cc) + std::abs(t.cs) + std::abs(t.sc) + std::abs(t.ss);
  return s;
}

}  // namespace isoband
