#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "isoband/simd/kernels.hpp"

using namespace isoband::simd;

namespace {

std::vector<cd> random_complex(std::mt19937_64& rng, std::size_t n) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<cd> v(n);
  for (auto& z : v) z = {u(rng), u(rng)};
  return v;
}

std::vector<double> random_real(std::mt19937_64& rng, std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng);
  return v;
}

double max_diff(const std::vector<cd>& a, const std::vector<cd>& b) {
  double m = 0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

void check_against_reference(const KernelTable& vec) {
  const KernelTable& ref = scalar_table();
  std::mt19937_64 rng(20240611);
  for (std::size_t n : {0, 1, 2, 3, 4, 5, 7, 8, 15, 16, 17, 63, 64, 65, 1000, 4099}) {
    CAPTURE(n);
    auto a = random_complex(rng, n), b = random_complex(rng, n);
    auto s = random_real(rng, n, -3, 3);

    std::vector<cd> o1(n), o2(n);
    ref.complex_multiply(a.data(), b.data(), o1.data(), n);
    vec.complex_multiply(a.data(), b.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) < 1e-14);

    ref.real_scale(s.data(), a.data(), o1.data(), n);
    vec.real_scale(s.data(), a.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) == 0.0);

    const double tolSum = 1e-13 * (1.0 + static_cast<double>(n));
    CHECK(std::abs(ref.squared_norm(a.data(), n) - vec.squared_norm(a.data(), n)) < tolSum);
    CHECK(std::abs(ref.squared_distance(a.data(), b.data(), n) -
                   vec.squared_distance(a.data(), b.data(), n)) < tolSum);
    CHECK(std::abs(ref.max_abs(a.data(), n) - vec.max_abs(a.data(), n)) < 1e-15);

    // Metric samples with det 1: g22 > 0 and arbitrary g12.
    auto g12 = random_real(rng, n, -3, 3);
    auto g22 = random_real(rng, n, 0.05, 5);
    ref.beltrami_from_metric(g12.data(), g22.data(), o1.data(), n);
    vec.beltrami_from_metric(g12.data(), g22.data(), o2.data(), n);
    CHECK(max_diff(o1, o2) < 1e-14);

    std::vector<double> j1(n), j2(n);
    ref.jacobian(a.data(), b.data(), j1.data(), n);
    vec.jacobian(a.data(), b.data(), j2.data(), n);
    double jd = 0;
    for (std::size_t i = 0; i < n; ++i) jd = std::max(jd, std::abs(j1[i] - j2[i]));
    CHECK(jd < 1e-14);
  }
}

}  // namespace

TEST_CASE("reference kernels match their definitions") {
  const KernelTable& ref = scalar_table();
  std::vector<cd> a{{1, 2}, {3, -1}}, b{{0, 1}, {2, 2}}, out(2);
  ref.complex_multiply(a.data(), b.data(), out.data(), 2);
  CHECK(out[0] == cd(-2, 1));
  CHECK(out[1] == cd(8, 4));
  CHECK(ref.squared_norm(a.data(), 2) == 15.0);
  CHECK(ref.max_abs(a.data(), 2) == doctest::Approx(std::sqrt(10.0)));
  double g12 = 0, g22 = 2;
  cd q;
  ref.beltrami_from_metric(&g12, &g22, &q, 1);
  CHECK(q.real() == doctest::Approx(1.0 / 3.0));
  CHECK(std::abs(q.imag()) < 1e-16);
}

TEST_CASE("vector kernels agree with the reference") {
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    const KernelTable* t = table_for(isa);
    if (!t) {
      MESSAGE(std::string(isa_name(isa)) << " kernels not available on this host");
      continue;
    }
    const std::string name = isa_name(isa);
    CAPTURE(name);
    check_against_reference(*t);
  }
  CHECK(table_for(Isa::Scalar) == &scalar_table());
  MESSAGE("active kernel set: " << std::string(isa_name(active().isa)));
}
