#include <cmath>
#include <numbers>

#include "doctest.h"
#include "isoband/error.hpp"
#include "isoband/sandwich.hpp"
#include "test_support.hpp"

using namespace isoband;
using std::numbers::pi;

namespace {

template <class Grid>
double max_error(const Grid& g, const RealField& f, auto exact) {
  double w = 0;
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < static_cast<int>(f.size() / g.n1()); ++j)
      w = std::max(w, std::abs(f[g.index(i, j)] - exact(g.x1(i), g.x2(j))));
  return w;
}

}  // namespace

TEST_CASE("constant omega only rescales the potential") {
  TorusGrid g(16, 16);
  const RealField V = sample(g, [](double x, double y) { return std::cos(x + y); });
  const auto r = sandwich_reduce(g, RealField(g.size(), 2.0), testsupport::smooth_metric(1, g), V);
  CHECK(max_error(g, r.V, [](double x, double y) { return std::cos(x + y) / 4; }) < 1e-15);
  CHECK(r.sigmaBottom.empty());

  StripGrid sg(16, 16);
  const auto s = sandwich_reduce(sg, RealField(sg.size(), 3.0), Eigen::Matrix2d::Identity(), RealField(sg.size(), 9.0));
  CHECK(max_error(sg, s.V, [](double, double) { return 1.0; }) < 1e-15);
  for (double v : s.sigmaBottom) CHECK(v == 0.0);
  for (double v : s.sigmaTop) CHECK(v == 0.0);
}

TEST_CASE("torus reduction matches symbolic derivatives") {
  TorusGrid g(64, 64);
  const RealField omega = sample(g, [](double x, double) { return std::exp(0.1 * std::sin(x)); });
  const auto r = sandwich_reduce(g, omega, MetricField::constant(g, 1, 0, 1), {});
  CHECK(max_error(g, r.V, [](double x, double) { return 0.01 * std::cos(x) * std::cos(x) - 0.1 * std::sin(x); }) <
        1e-10);

  // ω = e^L with L = 0.1 sin x1 + 0.2 cos x2 and constant A: ω⁻¹∇·(A∇ω) = Σ A_jl (L_jl + L_j L_l).
  const double a11 = 0.5, a12 = 0.3, a22 = 2.2;
  const RealField w2 = sample(g, [](double x, double y) { return std::exp(0.1 * std::sin(x) + 0.2 * std::cos(y)); });
  const RealField V = sample(g, [](double x, double) { return std::cos(x); });
  const auto r2 = sandwich_reduce(g, w2, MetricField::constant(g, a11, a12, a22), V);
  auto exact = [&](double x, double y) {
    const double L1 = 0.1 * std::cos(x), L2 = -0.2 * std::sin(y);
    const double L11 = -0.1 * std::sin(x), L22 = -0.2 * std::cos(y);
    const double w = std::exp(0.1 * std::sin(x) + 0.2 * std::cos(y));
    return std::cos(x) / (w * w) + a11 * (L11 + L1 * L1) + 2 * a12 * L1 * L2 + a22 * (L22 + L2 * L2);
  };
  CHECK(max_error(g, r2.V, exact) < 1e-10);
}

TEST_CASE("strip reduction: polynomial profile and fourth-order convergence") {
  StripGrid g(32, 64);
  const RealField omega =
      sample(g, [](double x, double y) { return 1 + 0.2 * y * (pi - y) + 0.1 * std::cos(x); });
  const auto r = sandwich_reduce(g, omega, Eigen::Matrix2d::Identity(), {});
  CHECK(max_error(g, r.V, [](double x, double y) {
          return (-0.4 - 0.1 * std::cos(x)) / (1 + 0.2 * y * (pi - y) + 0.1 * std::cos(x));
        }) < 1e-11);
  for (int i = 0; i < g.n1(); ++i) {
    const double w0 = 1 + 0.1 * std::cos(g.x1(i));
    // Outward normal −e2 at the bottom edge: σ̃ = +ω⁻¹∂₂ω there.
    CHECK(std::abs(r.sigmaBottom[i] - 0.2 * pi / w0) < 1e-11);
    CHECK(std::abs(r.sigmaTop[i] - 0.2 * pi / w0) < 1e-11);
  }

  auto L = [](double x, double y) { return 0.3 * std::sin(y) * std::cos(x) + 0.2 * y; };
  auto exact = [](double x, double y) {
    const double L1 = -0.3 * std::sin(y) * std::sin(x), L2 = 0.3 * std::cos(y) * std::cos(x) + 0.2;
    const double L11 = -0.3 * std::sin(y) * std::cos(x), L22 = -0.3 * std::sin(y) * std::cos(x);
    return 2.0 * (L11 + L1 * L1) + 0.5 * (L22 + L2 * L2);
  };
  Eigen::Matrix2d B;
  B << 2.0, 0.0, 0.0, 0.5;
  double err[2];
  for (int level = 0; level < 2; ++level) {
    StripGrid sg(32, 64 << level);
    const auto red = sandwich_reduce(sg, sample(sg, [&](double x, double y) { return std::exp(L(x, y)); }), B, {});
    err[level] = max_error(sg, red.V, exact);
  }
  MESSAGE("strip reduction error " << err[0] << " -> " << err[1]);
  CHECK(err[0] < 1e-5);
  CHECK(err[0] / err[1] > 12);
}

TEST_CASE("reduction rejects non-positive omega") {
  TorusGrid g(16, 16);
  RealField omega(g.size(), 1.0);
  omega[5] = 0.0;
  CHECK_THROWS_AS(sandwich_reduce(g, omega, MetricField::constant(g, 1, 0, 1), {}), Error);
  StripGrid sg(16, 16);
  CHECK_THROWS_AS(sandwich_reduce(sg, RealField(sg.size(), -1.0), Eigen::Matrix2d::Identity(), {}), Error);
}

TEST_CASE("weighted and reduced fibers share their spectrum") {
  TorusGrid g(64, 64);
  CoefficientSet weighted(g);
  weighted.G = testsupport::smooth_metric(1, g);
  weighted.omega = sample(g, [](double x, double) { return std::exp(0.1 * std::sin(x)); });
  weighted.V = sample(g, [](double x, double) { return std::cos(x); });
  weighted.mu.resize(g.size());
  for (std::size_t s = 0; s < g.size(); ++s) weighted.mu[s] = weighted.omega[s] * weighted.omega[s];
  const CoefficientSet reduced = sandwich_reduce(weighted);
  CHECK(reduced.omega.empty());
  for (double m : reduced.mu) CHECK(std::abs(m - 1.0) < 1e-15);
  const auto rep = verify_sandwich(weighted, {0.0, 0.3}, 8, Cutoff(12));
  MESSAGE("torus sandwich mismatch " << rep.measurement("sandwich"));
  CHECK(rep.passed);

  StripGrid sg(64, 128);
  const RealField omega = sample(sg, [](double x, double y) { return 1 + 0.2 * y * (pi - y) + 0.1 * std::cos(x); });
  const RealField V = sample(sg, [](double x, double) { return std::cos(x); });
  for (auto bc : {BoundaryCondition::Neumann, BoundaryCondition::Dirichlet}) {
    const auto srep = verify_sandwich(sg, bc, Eigen::Matrix2d::Identity(), omega, V, {0.0, 0.5}, 8, Cutoff(8, 16));
    MESSAGE("strip sandwich mismatch " << srep.measurement("sandwich"));
    CHECK(srep.passed);
  }
}
