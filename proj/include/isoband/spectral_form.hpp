#pragma once

#include <array>
#include <memory>
#include <vector>

#include "isoband/grid.hpp"
#include "isoband/linalg.hpp"

namespace isoband {

/// Plane-wave cutoffs: x1 frequencies m ∈ [−m1, m1], transverse index bound m2.
struct Cutoff {
  int m1 = 8;
  int m2 = 8;
  Cutoff() = default;
  Cutoff(int m) : m1(m), m2(m) {}  // NOLINT(google-explicit-constructor)
  Cutoff(int a, int b) : m1(a), m2(b) {}
};

enum class TransverseKind {
  Exponential,     // e^{i n x2}/√(2π), n ∈ [−M, M], periodic trapezoid on [0, 2π)
  StripCosine,     // √(2/π) cos(n x2) (1/√π for n = 0), n ∈ [0, M], on [0, π]
  StripSine,       // √(2/π) sin(n x2), n ∈ [1, M], on [0, π]
  CylinderCosine,  // cos(n x2)/√π (1/√(2π) for n = 0), n ∈ [0, M], periodic on [0, 2π)
  CylinderSine,    // sin(n x2)/√π, n ∈ [1, M], periodic on [0, 2π)
};

enum class StripQuadrature { Trapezoid, Simpson, Boole };

/// Orthonormal transverse basis tabulated at quadrature nodes.
class TransverseBasis {
 public:
  static TransverseBasis exponential(int m2, int nq);
  static TransverseBasis cylinder(bool odd, int m2, int nq);
  /// Nodes jπ/n2, j = 0..n2 (n2 even for Simpson, a multiple of 4 for Boole).
  static TransverseBasis strip(bool dirichlet, int m2, int n2, StripQuadrature rule);

  TransverseKind kind() const noexcept { return kind_; }
  int size() const noexcept { return static_cast<int>(labels_.size()); }
  int label(int idx) const noexcept { return labels_[idx]; }
  const std::vector<double>& nodes() const noexcept { return nodes_; }
  const std::vector<double>& weights() const noexcept { return weights_; }
  /// nodes × size tables of ψ and ψ'.
  const CMatrix& values() const noexcept { return values_; }
  const CMatrix& derivatives() const noexcept { return derivs_; }

  cd value(int idx, double x2) const noexcept;
  cd derivative(int idx, double x2) const noexcept;

 private:
  TransverseKind kind_ = TransverseKind::Exponential;
  std::vector<int> labels_;
  std::vector<double> nodes_, weights_;
  CMatrix values_, derivs_;
};

/// Coefficients C_{αβ}(x), α, β ∈ {0, 1, 2} (∂_0 = identity), of the form
///   h[u, v] = ∫ Σ C_{αβ} ∂_β u · conj(∂_α v) dx
/// sampled on n1 periodic x1 points × transverse quadrature nodes,
/// layout i * nodes + j. Empty entries are zero.
struct FormCoefficients {
  int n1 = 0;
  int nodes = 0;
  std::array<std::array<ComplexField, 3>, 3> C;

  FormCoefficients(int n1_, int nodes_) : n1(n1_), nodes(nodes_) {}
  ComplexField& at(int alpha, int beta) { return C[alpha][beta]; }
  void add(int alpha, int beta, std::size_t s, cd value);
};

/// σ-weighted trace term on the horizontal line x2 = y0; sigma sampled on the
/// n1 periodic x1 points.
struct LineTerm {
  double y0 = 0.0;
  RealField sigma;
};

/// Quadrature of a trace term on an arbitrary curve: Σ_t weight_t |u(point_t)|².
struct PointTerm {
  std::vector<cd> points;
  std::vector<double> weights;
};

/// Precomputed, quasimomentum-independent pieces of a form in the basis
///   φ_{m,n}(x) = e^{i(m+k)x1}/√(2π) · ψ_n(x2),  m ∈ [−m1, m1],
/// flattened as (m + m1) · Nt + n. matrix(k) is safe to call concurrently.
class FormTables {
 public:
  FormTables(const FormCoefficients& coeffs, std::shared_ptr<const TransverseBasis> basis, int m1,
             const std::vector<LineTerm>& lines = {}, const std::vector<PointTerm>& points = {});

  int size() const noexcept { return (2 * m1_ + 1) * nt_; }
  int m1() const noexcept { return m1_; }
  const TransverseBasis& basis() const noexcept { return *basis_; }

  /// Form matrix at quasimomentum k (analytic in k; Hermitian for real k
  /// and Hermitian coefficients).
  CMatrix matrix(cd k) const;

 private:
  std::shared_ptr<const TransverseBasis> basis_;
  int m1_ = 0;
  int nt_ = 0;
  // tables_[3α + β][d + 2 m1]
  std::array<std::vector<CMatrix>, 9> tables_;
  std::array<bool, 9> used_{};
  CMatrix points_;
};

}  // namespace isoband
