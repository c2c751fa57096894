#include <cmath>
#include <random>

#include "doctest.h"
#include "isoband/fft.hpp"

using namespace isoband;

TEST_CASE("2D transform is mean normalised and inverts exactly") {
  TorusGrid g(16, 8);
  ComplexField x(g.size());
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j)
      x[g.index(i, j)] = 2.0 + 3.0 * std::polar(1.0, 2 * g.x1(i) - 3 * g.x2(j)) + cd(0, 1) * std::cos(4 * g.x2(j));
  Fft2d fft(16, 8);
  const ComplexField hat = fft.forward(x);
  CHECK(std::abs(hat[0] - 2.0) < 1e-14);
  CHECK(std::abs(hat[g.index(2, frequency_bin(-3, 8))] - 3.0) < 1e-14);
  CHECK(std::abs(hat[g.index(0, 4)] - cd(0, 1)) < 1e-14);  // ±4 alias onto the one-sided Nyquist bin
  const ComplexField back = fft.backward(hat);
  for (std::size_t s = 0; s < x.size(); ++s) CHECK(std::abs(back[s] - x[s]) < 1e-14);
}

TEST_CASE("1D transform matches a direct sum") {
  std::mt19937 rng(5);
  std::normal_distribution<double> N;
  const int n = 12;
  ComplexField x(n), hat(n);
  for (cd& v : x) v = {N(rng), N(rng)};
  Fft1d(n).forward(x, hat);
  for (int k = 0; k < n; ++k) {
    cd direct{};
    for (int j = 0; j < n; ++j) direct += x[j] * std::polar(1.0, -kTwoPi * k * j / n);
    CHECK(std::abs(hat[k] - direct / double(n)) < 1e-14);
  }
}

TEST_CASE("coefficient resampling preserves the band and signed frequencies") {
  ComplexField c(4 * 4, cd{});
  c[1 * 4 + 3] = 5.0;  // (m, n) = (1, −1)
  c[2 * 4 + 0] = 7.0;  // one-sided Nyquist m = −2
  const ComplexField up = resample_coefficients(c, 4, 4, 8, 8);
  CHECK(up[1 * 8 + 7] == cd(5.0));
  CHECK(up[6 * 8 + 0] == cd(7.0));
  double total = 0;
  for (cd v : up) total += std::abs(v);
  CHECK(total == 12.0);
  const ComplexField down = resample_coefficients(up, 8, 8, 4, 4);
  CHECK(down == c);
  CHECK(signed_frequency(4, 8) == -4);
  CHECK(frequency_bin(-1, 8) == 7);
}
