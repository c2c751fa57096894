#pragma once

// Independent reference solutions used by the unit and acceptance suites.

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

namespace oracles {

/// Sorted values (m + k)²·a11 + n²·a22 over |m| <= mMax, n in [nMin, nMax]
/// (n ranging over integers, or non-negative integers when nMin >= 0).
inline std::vector<double> separable_levels(double k, double a11, double a22, int mMax, int nMin, int nMax,
                                            int count) {
  std::vector<double> v;
  for (int m = -mMax; m <= mMax; ++m)
    for (int n = nMin; n <= nMax; ++n) v.push_back(a11 * (m + k) * (m + k) + a22 * n * n);
  std::sort(v.begin(), v.end());
  v.resize(std::min<std::size_t>(v.size(), count));
  return v;
}

/// Lowest eigenvalues of −u'' + σ δ(x − x0) u on the 2π-periodic circle with
/// Bloch phase e^{iθ}, by a second-order finite-difference scheme with the
/// delta placed on a node (weight σ/h), Richardson-extrapolated over three
/// grid halvings.
inline std::vector<double> circle_delta_fd(double sigma, double x0, int count, double theta = 0.0) {
  auto solve = [&](int n) {
    const double h = 2 * std::numbers::pi / n;
    const int j0 = static_cast<int>(std::lround(x0 / h)) % n;
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    const std::complex<double> phase = std::polar(1.0, theta);
    for (int j = 0; j < n; ++j) {
      M(j, j) = 2.0 / (h * h);
      M(j, (j + 1) % n) += -1.0 / (h * h) * (j == n - 1 ? phase : 1.0);
      M(j, (j + n - 1) % n) += -1.0 / (h * h) * (j == 0 ? std::conj(phase) : 1.0);
    }
    M(j0, j0) += sigma / h;
    Eigen::VectorXd values;
    if (theta == 0.0)
      values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(M.real(), Eigen::EigenvaluesOnly).eigenvalues();
    else
      values = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd>(M, Eigen::EigenvaluesOnly).eigenvalues();
    return std::vector<double>(values.data(), values.data() + count);
  };
  const auto e1 = solve(256), e2 = solve(512), e3 = solve(1024);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double r1 = (4 * e2[i] - e1[i]) / 3, r2 = (4 * e3[i] - e2[i]) / 3;
    out[i] = (16 * r2 - r1) / 15;
  }
  return out;
}

/// Lowest eigenvalues of −u'' on (0, π) with u'(0) = σ u(0) (form term σ|u(0)|²)
/// and u'(π) = 0, by a second-order lumped-mass scheme,
/// Richardson-extrapolated.
inline std::vector<double> robin_interval_fd(double sigma, int count) {
  auto solve = [&](int n) {
    const double h = std::numbers::pi / n;
    // Cell-vertex scheme with half-weight boundary rows, symmetrised by the
    // lumped mass so the pencil reduces to a tridiagonal matrix.
    Eigen::VectorXd w = Eigen::VectorXd::Constant(n + 1, h), diag(n + 1), sub(n);
    w(0) = w(n) = h / 2;
    for (int j = 0; j <= n; ++j) diag(j) = ((j == 0 || j == n) ? 1 / h : 2 / h) / w(j);
    diag(0) += sigma / w(0);
    for (int j = 0; j < n; ++j) sub(j) = -1 / h / std::sqrt(w(j) * w(j + 1));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es;
    es.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
    return std::vector<double>(es.eigenvalues().data(), es.eigenvalues().data() + count);
  };
  const auto e1 = solve(1000), e2 = solve(2000), e3 = solve(4000);
  std::vector<double> out(count);
  for (int i = 0; i < count; ++i) {
    const double r1 = (4 * e2[i] - e1[i]) / 3, r2 = (4 * e3[i] - e2[i]) / 3;
    out[i] = (16 * r2 - r1) / 15;
  }
  return out;
}

}  // namespace oracles
