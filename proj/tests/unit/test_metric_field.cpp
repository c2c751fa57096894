#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "isoband/error.hpp"
#include "isoband/metric_field.hpp"

using namespace isoband;

namespace {

// Metric Rθ diag(λ, 1/λ) Rθᵀ with smoothly varying λ and θ.
MetricField rotated_metric(const TorusGrid& g, double amp) {
  RealField g11(g.size()), g12(g.size()), g22(g.size());
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) {
      const double x = g.x1(i), y = g.x2(j);
      const double lam = std::exp(amp * std::sin(x) * std::cos(y));
      const double th = 0.5 * std::cos(x - y);
      const double c = std::cos(th), s = std::sin(th);
      const std::size_t k = g.index(i, j);
      g11[k] = lam * c * c + s * s / lam;
      g12[k] = (lam - 1.0 / lam) * c * s;
      g22[k] = lam * s * s + c * c / lam;
    }
  return MetricField::from_samples(g, g11, g12, g22);
}

}  // namespace

TEST_CASE("validate_metric accepts identity and constant diagonal metrics") {
  TorusGrid g(8, 8);
  auto id = validate_metric(MetricField::constant(g, 1, 0, 1));
  CHECK(id.passed);
  auto G = MetricField::constant(g, 0.5, 0, 2);
  CHECK(validate_metric(G).passed);
  CHECK(G.c == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(G.C == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(G.detConstant == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("validate_metric flags a non-constant determinant at the extreme sample") {
  TorusGrid g(16, 8);
  auto g22 = sample(g, [](double x, double) { return 1.0 + 0.5 * std::sin(x); });
  auto G = MetricField::from_samples(g, RealField(g.size(), 1.0), RealField(g.size(), 0.0), g22);
  auto report = validate_metric(G);
  REQUIRE_FALSE(report.passed);
  bool sawDet = false;
  for (const auto& v : report.violations)
    if (v.rule == "det-constancy") {
      sawDet = true;
      // |sin x1| is maximal at x1 = π/2 (i = 4) or 3π/2 (i = 12).
      CHECK((v.i == 4 || v.i == 12));
    }
  CHECK(sawDet);
}

TEST_CASE("validate_metric rejects mismatched component sizes") {
  TorusGrid g(8, 8);
  MetricField G{g, RealField(64, 1.0), RealField(63, 0.0), RealField(64, 1.0)};
  CHECK_THROWS_AS(validate_metric(G), Error);
}

TEST_CASE("normalize_det divides out the constant determinant") {
  TorusGrid g(8, 8);
  double scale = 0;
  auto N = normalize_det(MetricField::constant(g, 2, 0, 2), &scale);
  CHECK(scale == doctest::Approx(2.0));
  CHECK(N.g11[5] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(N.g22[5] == doctest::Approx(1.0).epsilon(1e-15));
  auto U = normalize_det(MetricField::constant(g, 0.5, 0, 2));
  CHECK(U.g11[0] == 0.5);
  CHECK(U.g22[0] == 2.0);

  auto R = rotated_metric(g, 0.7);
  for (auto& v : R.g11) v *= 3.0;
  for (auto& v : R.g12) v *= 3.0;
  for (auto& v : R.g22) v *= 3.0;
  R = MetricField::from_samples(g, R.g11, R.g12, R.g22);
  auto Rn = normalize_det(R);
  for (std::size_t s = 0; s < g.size(); ++s)
    CHECK(std::abs(Rn.g11[s] * Rn.g22[s] - Rn.g12[s] * Rn.g12[s] - 1.0) < 1e-12);
  MetricField bad = MetricField::constant(g, 1, 0, 1);
  bad.detConstant = -1;
  CHECK_THROWS_AS(normalize_det(bad), Error);
}

TEST_CASE("metric_to_beltrami on closed-form metrics") {
  TorusGrid g(8, 8);
  auto q0 = metric_to_beltrami(MetricField::constant(g, 1, 0, 1));
  CHECK(q0.supNorm == 0.0);
  auto q = metric_to_beltrami(MetricField::constant(g, 0.5, 0, 2));
  for (cd v : q.q) {
    CHECK(v.real() == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(std::abs(v.imag()) < 1e-15);
  }
}

TEST_CASE("metric_to_beltrami: |q| on diag(t, 1/t) is (t-1)/(t+1) and monotone") {
  TorusGrid g(8, 8);
  double prev = -1;
  for (double t : {1.0, 1.5, 2.0, 4.0, 10.0, 100.0}) {
    auto q = metric_to_beltrami(MetricField::constant(g, 1.0 / t, 0, t));
    CHECK(q.supNorm == doctest::Approx((t - 1) / (t + 1)).epsilon(1e-14));
    CHECK(q.supNorm < 1.0);
    CHECK(q.supNorm > prev);
    prev = q.supNorm;
  }
}

TEST_CASE("metric_to_beltrami: mirror-symmetric metric gives conjugate-symmetric q") {
  TorusGrid g(16, 16);
  auto G = rotated_metric(g, 0.0);
  // θ(x1, x2) = 0.3 sin(x2) cos(x1) is odd in x2, λ even: g12 odd, g11, g22 even.
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) {
      const double x = g.x1(i), y = g.x2(j);
      const double lam = std::exp(0.4 * std::cos(x) * std::cos(y));
      const double th = 0.3 * std::sin(y) * std::cos(x);
      const double c = std::cos(th), s = std::sin(th);
      const std::size_t k = g.index(i, j);
      G.g11[k] = lam * c * c + s * s / lam;
      G.g12[k] = (lam - 1.0 / lam) * c * s;
      G.g22[k] = lam * s * s + c * c / lam;
    }
  auto q = metric_to_beltrami(G);
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) {
      const int jm = (g.n2() - j) % g.n2();
      CHECK(std::abs(q.q[g.index(i, jm)] - std::conj(q.q[g.index(i, j)])) < 1e-14);
    }
}

TEST_CASE("metric_to_beltrami rejects non-unit determinant and degenerate metrics") {
  TorusGrid g(8, 8);
  CHECK_THROWS_AS(metric_to_beltrami(MetricField::constant(g, 2, 0, 2)), Error);
  try {
    metric_to_beltrami(MetricField::constant(g, 1e-13, 0, 1e13));
    FAIL("expected degenerate ellipticity");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateEllipticity);
  }
}

TEST_CASE("beltrami_to_metric inverts the closed forms and round-trips") {
  TorusGrid g(32, 32);
  auto id = beltrami_to_metric(BeltramiCoefficient::from_samples(g, ComplexField(g.size(), 0.0)));
  CHECK(id.g11[3] == 1.0);
  CHECK(id.g12[3] == 0.0);
  CHECK(id.g22[3] == 1.0);
  auto half = beltrami_to_metric(BeltramiCoefficient::from_samples(g, ComplexField(g.size(), 1.0 / 3.0)));
  CHECK(half.g11[7] == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(std::abs(half.g12[7]) < 1e-15);
  CHECK(half.g22[7] == doctest::Approx(2.0).epsilon(1e-15));

  ComplexField q(g.size());
  for (int i = 0; i < g.n1(); ++i)
    for (int j = 0; j < g.n2(); ++j) {
      const double x = g.x1(i), y = g.x2(j);
      q[g.index(i, j)] = 0.5 * std::polar(0.5 + 0.5 * std::sin(x + 2 * y), std::cos(x) + y);
    }
  auto Q = BeltramiCoefficient::from_samples(g, q);
  CHECK(Q.supNorm == doctest::Approx(0.5).epsilon(1e-3));
  auto G = beltrami_to_metric(Q);
  CHECK(validate_metric(G).passed);
  auto back = metric_to_beltrami(G);
  double worst = 0;
  for (std::size_t s = 0; s < q.size(); ++s) worst = std::max(worst, std::abs(back.q[s] - q[s]));
  CHECK(worst < 1e-12);

  auto G2 = beltrami_to_metric(back);
  double worstG = 0;
  for (std::size_t s = 0; s < q.size(); ++s)
    worstG = std::max({worstG, std::abs(G2.g11[s] - G.g11[s]), std::abs(G2.g12[s] - G.g12[s]),
                       std::abs(G2.g22[s] - G.g22[s])});
  CHECK(worstG < 1e-10);

  CHECK_THROWS_AS(beltrami_to_metric(BeltramiCoefficient::from_samples(g, ComplexField(g.size(), 1.0))),
                  Error);
}

TEST_CASE("sqrt_metric against an eigendecomposition oracle") {
  TorusGrid g(8, 8);
  auto F0 = sqrt_metric(MetricField::constant(g, 1, 0, 1));
  CHECK(F0.g11[0] == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(F0.g12[0] == 0.0);
  auto F = sqrt_metric(MetricField::constant(g, 0.5, 0, 2));
  CHECK(F.g11[0] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(F.g22[0] == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));

  const double th = std::numbers::pi / 6;
  Eigen::Matrix2d Rot;
  Rot << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
  Eigen::Matrix2d Gm = Rot * Eigen::Vector2d(4.0, 0.25).asDiagonal() * Rot.transpose();
  auto Fr = sqrt_metric(MetricField::constant(g, Gm(0, 0), Gm(0, 1), Gm(1, 1)));
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(Gm);
  Eigen::Matrix2d oracle = es.operatorSqrt();
  Eigen::Matrix2d Fm;
  Fm << Fr.g11[0], Fr.g12[0], Fr.g12[0], Fr.g22[0];
  CHECK((Fm - oracle).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((Fm * Fm - Gm).cwiseAbs().maxCoeff() < 1e-12);
  CHECK(std::abs(Fm.determinant() - 1.0) < 1e-12);

  auto G = rotated_metric(TorusGrid(16, 16), 1.2);
  auto Fv = sqrt_metric(G);
  for (std::size_t s = 0; s < G.grid.size(); ++s) {
    Eigen::Matrix2d M;
    M << Fv.g11[s], Fv.g12[s], Fv.g12[s], Fv.g22[s];
    Eigen::Matrix2d Gs;
    Gs << G.g11[s], G.g12[s], G.g12[s], G.g22[s];
    CHECK((M * M - Gs).cwiseAbs().maxCoeff() < 1e-12);
    CHECK(std::abs(M.determinant() - 1.0) < 1e-12);
  }
  CHECK_THROWS_AS(sqrt_metric(MetricField::constant(g, -1, 0, -1)), Error);
}
