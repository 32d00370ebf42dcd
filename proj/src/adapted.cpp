#include "ebvp/adapted.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>
#include <algorithm>
#include <cmath>

namespace ebvp {

ConormalData ConormalData::from_symbol(const LinearSymbol& D, const RealVector& tau,
                                       const Metric& metric) {
  D.validate();
  metric.validate();
  if (tau.size() != D.dimension())
    throw ConfigError("conormal: dimension mismatch with the symbol");
  if (!D.square()) throw ConfigError("conormal: symbol must be square");
  ConormalData data;
  data.tau = tau;
  data.sigma0 = evaluate(D, tau);
  Eigen::FullPivLU<Matrix> lu(data.sigma0);
  if (!lu.isInvertible())
    throw ConfigError("conormal: symbol is singular in the conormal direction");
  data.sigma0_inv = lu.inverse();
  return data;
}

Matrix adapted_symbol(const LinearSymbol& D, const ConormalData& conormal,
                      const Metric& metric, const RealVector& xi) {
  if (xi.size() != D.dimension())
    throw ConfigError("adapted_symbol: covector dimension mismatch");
  // xi must be g-orthogonal to tau, i.e. vanish on the dual vector of tau
  const Real pairing = std::abs(Real(xi.transpose() * metric.g * conormal.tau));
  const Real scale = std::max(Real(1), xi.norm() * conormal.tau.norm());
  if (pairing > 1e-10 * scale)
    throw ConfigError("adapted_symbol: covector is not tangential to the boundary");
  return conormal.sigma0_inv * evaluate(D, xi);
}

Matrix BoundaryOperator1D::mode_matrix(int k) const {
  return Complex(0, k) * a + b + shift * Matrix::Identity(a.rows(), a.cols());
}

BoundaryOperator1D BoundaryOperator1D::shifted(Real r) const {
  BoundaryOperator1D out = *this;
  out.shift += r;
  return out;
}

BoundaryOperator1D BoundaryOperator1D::negated() const {
  BoundaryOperator1D out;
  out.a = -a;
  out.b = -b;
  out.shift = -shift;
  return out;
}

BoundaryOperator1D BoundaryOperator1D::adjoint_adapted(const Matrix& sigma0) const {
  if (sigma0.rows() != a.rows() || sigma0.cols() != a.cols())
    throw ConfigError("adjoint_adapted: sigma0 dimension mismatch");
  Eigen::FullPivLU<Matrix> lu(sigma0.adjoint());
  if (!lu.isInvertible()) throw ConfigError("adjoint_adapted: sigma0 is singular");
  const Matrix s_inv = lu.inverse();
  BoundaryOperator1D out;
  // modes transform as M_k -> -(sigma0^*)^{-1} M_k^* sigma0^*; since
  // (i k a)^* = -i k a^*, the a coefficient keeps its sign under the minus
  out.a = s_inv * a.adjoint() * sigma0.adjoint();
  out.b = -(s_inv * b.adjoint() * sigma0.adjoint());
  out.shift = -shift;
  return out;
}

void BoundaryOperator1D::validate() const {
  if (a.rows() == 0 || a.rows() != a.cols())
    throw ConfigError("boundary operator: coefficient a must be square and nonempty");
  if (b.rows() != a.rows() || b.cols() != a.cols())
    throw ConfigError("boundary operator: coefficients a and b must match in shape");
}

ModeSplits mode_split(const BoundaryOperator1D& A, int K, Real realpart_tol) {
  A.validate();
  if (K < 0) throw ConfigError("mode_split: K must be non-negative");
  ModeSplits splits;
  splits.K = K;
  splits.splits.reserve(static_cast<size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k)
    splits.splits.push_back(spectral_projectors(A.mode_matrix(k), realpart_tol));
  return splits;
}

namespace {

std::vector<Real> mode_eigen_real_parts(const BoundaryOperator1D& A, int K) {
  std::vector<Real> parts;
  for (int k = -K; k <= K; ++k) {
    Eigen::ComplexEigenSolver<Matrix> es(A.mode_matrix(k), false);
    const auto& vals = es.eigenvalues();
    for (Eigen::Index i = 0; i < vals.size(); ++i) parts.push_back(vals(i).real());
  }
  std::sort(parts.begin(), parts.end());
  return parts;
}

}  // namespace

bool is_invertible_bisectorial_proxy(const BoundaryOperator1D& A, int K, Real tol) {
  for (Real re : mode_eigen_real_parts(A, K))
    if (std::abs(re) <= tol) return false;
  return true;
}

Real shift_to_invertible(const BoundaryOperator1D& A, int K, Real tol) {
  const std::vector<Real> parts = mode_eigen_real_parts(A, K);
  if (parts.empty()) return 0;
  Real margin = std::abs(parts.front());
  for (Real re : parts) margin = std::min(margin, std::abs(re));
  if (margin > tol) return 0;

  // candidate shifts put zero at gap midpoints of the real parts, plus one
  // past either end of the spectrum
  std::vector<Real> candidates;
  candidates.push_back(-(parts.front() - 1.0));
  candidates.push_back(-(parts.back() + 1.0));
  for (size_t i = 0; i + 1 < parts.size(); ++i)
    candidates.push_back(-(parts[i] + parts[i + 1]) / 2);

  // smallest viable perturbation: among candidates clearing the tolerance,
  // take the one of least magnitude (ties: the more negative shift); if none
  // clears it, fall back to the largest margin
  Real best_r = 0;
  Real best_margin = -1;
  Real small_r = 0;
  bool have_small = false;
  for (Real r : candidates) {
    Real m = std::abs(parts.front() + r);
    for (Real re : parts) m = std::min(m, std::abs(re + r));
    if (m > best_margin + 1e-14) {
      best_margin = m;
      best_r = r;
    }
    if (m > tol) {
      const bool better = !have_small || std::abs(r) < std::abs(small_r) - 1e-14 ||
                          (std::abs(std::abs(r) - std::abs(small_r)) <= 1e-14 &&
                           r < small_r);
      if (better) {
        small_r = r;
        have_small = true;
      }
    }
  }
  return have_small ? small_r : best_r;
}

}  // namespace ebvp
