#include "isoband/spectral_form.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "isoband/error.hpp"
#include "isoband/fft.hpp"

namespace isoband {
namespace {

using std::numbers::pi;
const double kInvSqrt2Pi = 1.0 / std::sqrt(2.0 * pi);
const double kInvSqrtPi = 1.0 / std::sqrt(pi);
const double kSqrt2OverPi = std::sqrt(2.0 / pi);

void tabulate(TransverseBasis& b, CMatrix& values, CMatrix& derivs, const std::vector<double>& nodes) {
  values.resize(static_cast<Eigen::Index>(nodes.size()), b.size());
  derivs.resize(values.rows(), values.cols());
  for (std::size_t j = 0; j < nodes.size(); ++j)
    for (int idx = 0; idx < b.size(); ++idx) {
      values(static_cast<Eigen::Index>(j), idx) = b.value(idx, nodes[j]);
      derivs(static_cast<Eigen::Index>(j), idx) = b.derivative(idx, nodes[j]);
    }
}

// Fourier coefficients along x1 of a sampled field for |d| <= 2 m1:
// out[(d + 2 m1) * nodes + j].
ComplexField x1_coefficients(const ComplexField& field, int n1, int nodes, int m1) {
  Fft1d fft(n1);
  const int nd = 4 * m1 + 1;
  ComplexField out(static_cast<std::size_t>(nd) * nodes);
  ComplexField column(n1);
  for (int j = 0; j < nodes; ++j) {
    for (int i = 0; i < n1; ++i) column[i] = field[static_cast<std::size_t>(i) * nodes + j];
    fft.forward(column, column);
    for (int d = -2 * m1; d <= 2 * m1; ++d)
      out[static_cast<std::size_t>(d + 2 * m1) * nodes + j] = column[frequency_bin(d, n1)];
  }
  return out;
}

}  // namespace

TransverseBasis TransverseBasis::exponential(int m2, int nq) {
  TransverseBasis b;
  b.kind_ = TransverseKind::Exponential;
  for (int n = -m2; n <= m2; ++n) b.labels_.push_back(n);
  for (int j = 0; j < nq; ++j) {
    b.nodes_.push_back(2.0 * pi * j / nq);
    b.weights_.push_back(2.0 * pi / nq);
  }
  tabulate(b, b.values_, b.derivs_, b.nodes_);
  return b;
}

TransverseBasis TransverseBasis::cylinder(bool odd, int m2, int nq) {
  TransverseBasis b;
  b.kind_ = odd ? TransverseKind::CylinderSine : TransverseKind::CylinderCosine;
  for (int n = odd ? 1 : 0; n <= m2; ++n) b.labels_.push_back(n);
  for (int j = 0; j < nq; ++j) {
    b.nodes_.push_back(2.0 * pi * j / nq);
    b.weights_.push_back(2.0 * pi / nq);
  }
  tabulate(b, b.values_, b.derivs_, b.nodes_);
  return b;
}

TransverseBasis TransverseBasis::strip(bool dirichlet, int m2, int n2, StripQuadrature rule) {
  if (rule == StripQuadrature::Simpson && n2 % 2 != 0)
    throw Error(ErrorKind::Structural, "Simpson quadrature needs an even number of strip intervals");
  if (rule == StripQuadrature::Boole && n2 % 4 != 0)
    throw Error(ErrorKind::Structural, "Boole quadrature needs a multiple of four strip intervals");
  TransverseBasis b;
  b.kind_ = dirichlet ? TransverseKind::StripSine : TransverseKind::StripCosine;
  for (int n = dirichlet ? 1 : 0; n <= m2; ++n) b.labels_.push_back(n);
  const double h = pi / n2;
  for (int j = 0; j <= n2; ++j) {
    b.nodes_.push_back(h * j);
    double w;
    if (rule == StripQuadrature::Trapezoid) {
      w = (j == 0 || j == n2) ? 0.5 * h : h;
    } else if (rule == StripQuadrature::Simpson) {
      w = (j == 0 || j == n2) ? h / 3.0 : (j % 2 == 1 ? 4.0 * h / 3.0 : 2.0 * h / 3.0);
    } else {
      static constexpr double kBoole[4] = {28.0, 64.0, 24.0, 64.0};
      w = ((j == 0 || j == n2) ? 14.0 : kBoole[j % 4]) * h / 45.0;
    }
    b.weights_.push_back(w);
  }
  tabulate(b, b.values_, b.derivs_, b.nodes_);
  return b;
}

cd TransverseBasis::value(int idx, double x) const noexcept {
  const int n = labels_[idx];
  switch (kind_) {
    case TransverseKind::Exponential: return std::polar(kInvSqrt2Pi, n * x);
    case TransverseKind::StripCosine: return n == 0 ? kInvSqrtPi : kSqrt2OverPi * std::cos(n * x);
    case TransverseKind::StripSine: return kSqrt2OverPi * std::sin(n * x);
    case TransverseKind::CylinderCosine: return n == 0 ? kInvSqrt2Pi : kInvSqrtPi * std::cos(n * x);
    case TransverseKind::CylinderSine: return kInvSqrtPi * std::sin(n * x);
  }
  return 0.0;
}

cd TransverseBasis::derivative(int idx, double x) const noexcept {
  const int n = labels_[idx];
  switch (kind_) {
    case TransverseKind::Exponential: return cd(0.0, n) * std::polar(kInvSqrt2Pi, n * x);
    case TransverseKind::StripCosine: return -n * kSqrt2OverPi * std::sin(n * x);
    case TransverseKind::StripSine: return n * kSqrt2OverPi * std::cos(n * x);
    case TransverseKind::CylinderCosine: return -n * kInvSqrtPi * std::sin(n * x);
    case TransverseKind::CylinderSine: return n * kInvSqrtPi * std::cos(n * x);
  }
  return 0.0;
}

void FormCoefficients::add(int alpha, int beta, std::size_t s, cd value) {
  ComplexField& f = C[alpha][beta];
  if (f.empty()) f.assign(static_cast<std::size_t>(n1) * nodes, cd{});
  f[s] += value;
}

FormTables::FormTables(const FormCoefficients& coeffs, std::shared_ptr<const TransverseBasis> basis,
                       int m1, const std::vector<LineTerm>& lines, const std::vector<PointTerm>& points)
    : basis_(std::move(basis)), m1_(m1), nt_(basis_->size()) {
  const TransverseBasis& b = *basis_;
  const int nodes = static_cast<int>(b.nodes().size());
  const int n1 = coeffs.n1;
  if (coeffs.nodes != nodes)
    throw Error(ErrorKind::Structural, "coefficient samples do not match the transverse quadrature");
  if (m1 < 0 || nt_ < 1) throw Error(ErrorKind::Config, "empty plane-wave basis");
  if (n1 < 2 * (2 * m1 + 1))
    throw Error(ErrorKind::Aliasing, "x1 grid of " + std::to_string(n1) + " points aliases cutoff " +
                                         std::to_string(m1) + "; need at least " +
                                         std::to_string(2 * (2 * m1 + 1)));
  int maxLabel = 0;
  for (int idx = 0; idx < nt_; ++idx) maxLabel = std::max(maxLabel, std::abs(b.label(idx)));
  const bool periodicNodes = b.kind() == TransverseKind::Exponential ||
                             b.kind() == TransverseKind::CylinderCosine ||
                             b.kind() == TransverseKind::CylinderSine;
  const int needed = periodicNodes ? 2 * (2 * maxLabel + 1) : 2 * maxLabel + 1;
  const int available = periodicNodes ? nodes : nodes - 1;
  if (available < needed)
    throw Error(ErrorKind::Aliasing, "transverse grid of " + std::to_string(available) +
                                         " intervals aliases cutoff " + std::to_string(maxLabel));

  const int nd = 4 * m1 + 1;
  const auto& w = b.weights();
  for (int alpha = 0; alpha < 3; ++alpha)
    for (int beta = 0; beta < 3; ++beta) {
      const ComplexField& field = coeffs.C[alpha][beta];
      if (field.empty()) continue;
      if (field.size() != static_cast<std::size_t>(n1) * nodes)
        throw Error(ErrorKind::Structural, "form coefficient has the wrong sample count");
      const ComplexField hat = x1_coefficients(field, n1, nodes, m1);
      double peak = 0.0;
      for (cd c : hat) peak = std::max(peak, std::abs(c));
      if (peak == 0.0) continue;
      auto& tabs = tables_[3 * alpha + beta];
      tabs.assign(nd, CMatrix::Zero(nt_, nt_));
      used_[3 * alpha + beta] = true;

      if (b.kind() == TransverseKind::Exponential) {
        Fft1d fft(nodes);
        ComplexField col(nodes);
        for (int d = 0; d < nd; ++d) {
          for (int j = 0; j < nodes; ++j) col[j] = hat[static_cast<std::size_t>(d) * nodes + j];
          fft.forward(col, col);
          for (int r = 0; r < nt_; ++r)
            for (int c = 0; c < nt_; ++c) {
              const int np = b.label(r), n = b.label(c);
              const cd left = alpha == 2 ? cd(0.0, -np) : cd(1.0);
              const cd right = beta == 2 ? cd(0.0, n) : cd(1.0);
              tabs[d](r, c) = left * right * col[frequency_bin(np - n, nodes)];
            }
        }
      } else {
        const CMatrix& left = alpha == 2 ? b.derivatives() : b.values();
        const CMatrix& right = beta == 2 ? b.derivatives() : b.values();
        for (int d = 0; d < nd; ++d) {
          CMatrix scaled = right;
          for (int j = 0; j < nodes; ++j) scaled.row(j) *= w[j] * hat[static_cast<std::size_t>(d) * nodes + j];
          tabs[d].noalias() = left.adjoint() * scaled;
        }
      }
    }

  if (!lines.empty()) {
    Fft1d fft(n1);
    auto& tabs = tables_[0];
    if (!used_[0]) tabs.assign(nd, CMatrix::Zero(nt_, nt_));
    used_[0] = true;
    for (const LineTerm& line : lines) {
      if (line.sigma.size() != static_cast<std::size_t>(n1))
        throw Error(ErrorKind::Structural, "line density must be sampled on the x1 grid");
      ComplexField s(line.sigma.begin(), line.sigma.end());
      fft.forward(s, s);
      Eigen::VectorXcd v(nt_);
      for (int idx = 0; idx < nt_; ++idx) v(idx) = b.value(idx, line.y0);
      const CMatrix outer = v.conjugate() * v.transpose();
      for (int d = -2 * m1; d <= 2 * m1; ++d) tabs[d + 2 * m1] += s[frequency_bin(d, n1)] * outer;
    }
  }

  if (!points.empty()) {
    const int N = size();
    points_ = CMatrix::Zero(N, N);
    for (const PointTerm& term : points) {
      const Eigen::Index np = static_cast<Eigen::Index>(term.points.size());
      if (term.weights.size() != term.points.size())
        throw Error(ErrorKind::Structural, "curve term needs one weight per point");
      CMatrix E(np, N);
      for (Eigen::Index t = 0; t < np; ++t) {
        const cd z = term.points[t];
        for (int m = -m1; m <= m1; ++m) {
          const cd e1 = std::polar(kInvSqrt2Pi, m * z.real());
          for (int idx = 0; idx < nt_; ++idx) E(t, (m + m1) * nt_ + idx) = e1 * b.value(idx, z.imag());
        }
      }
      CMatrix weighted = E;
      for (Eigen::Index t = 0; t < np; ++t) weighted.row(t) *= term.weights[t];
      points_.noalias() += E.adjoint() * weighted;
    }
  }
}

CMatrix FormTables::matrix(cd k) const {
  const int N = size();
  CMatrix H = points_.size() ? points_ : CMatrix::Zero(N, N);
  for (int mr = -m1_; mr <= m1_; ++mr) {
    const cd rowFactor[3] = {1.0, cd(0.0, -1.0) * (static_cast<double>(mr) + k), 1.0};
    for (int mc = -m1_; mc <= m1_; ++mc) {
      const cd colFactor[3] = {1.0, cd(0.0, 1.0) * (static_cast<double>(mc) + k), 1.0};
      const int d = mr - mc + 2 * m1_;
      auto block = H.block((mr + m1_) * nt_, (mc + m1_) * nt_, nt_, nt_);
      for (int ab = 0; ab < 9; ++ab)
        if (used_[ab]) block += (rowFactor[ab / 3] * colFactor[ab % 3]) * tables_[ab][d];
    }
  }
  return H;
}

}  // namespace isoband
