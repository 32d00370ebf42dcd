#pragma once

#include <vector>

#include "ebvp/spectral.hpp"
#include "ebvp/symbol.hpp"
#include "ebvp/types.hpp"

namespace ebvp {

// Conormal direction tau together with sigma_0 = sigma_D(tau) and its inverse.
struct ConormalData {
  RealVector tau;
  Matrix sigma0;
  Matrix sigma0_inv;

  // Errors if sigma_D(tau) is singular (non-elliptic conormal direction).
  static ConormalData from_symbol(const LinearSymbol& D, const RealVector& tau,
                                  const Metric& metric);
};

// sigma_0^{-1} sigma_D(xi) for a covector xi with xi(T) = 0, where T is the
// g-dual of tau. xi is given in the ambient frame, already extended by zero on T.
Matrix adapted_symbol(const LinearSymbol& D, const ConormalData& conormal,
                      const Metric& metric, const RealVector& xi);

// First-order operator on the circle with constant matrix coefficients:
// mode k acts as i k a + b + shift * id. For symbol-derived operators
// a = sigma_0^{-1} sigma_D(e_theta).
struct BoundaryOperator1D {
  Matrix a;
  Matrix b;
  Real shift = 0;

  Eigen::Index fiber_rank() const { return a.rows(); }
  Matrix mode_matrix(int k) const;
  BoundaryOperator1D shifted(Real r) const;
  // mode matrices negated: the adapted operator of the orientation-reversed end
  BoundaryOperator1D negated() const;
  // adapted operator of the adjoint problem: mode matrices
  // -(sigma0^*)^{-1} (mode_matrix(k))^* sigma0^*
  BoundaryOperator1D adjoint_adapted(const Matrix& sigma0) const;
  void validate() const;
};

// Per-mode spectral splits over k in [-K, K].
struct ModeSplits {
  int K = 0;
  std::vector<SpectralSplit> splits;  // index k + K

  const SpectralSplit& at(int k) const { return splits.at(static_cast<size_t>(k + K)); }
};

ModeSplits mode_split(const BoundaryOperator1D& A, int K, Real realpart_tol = 1e-10);

// Finite-truncation proxy for "invertible and bisectorial": no mode eigenvalue
// in [-K, K] with |Re| <= tol (which also excludes zero).
bool is_invertible_bisectorial_proxy(const BoundaryOperator1D& A, int K,
                                     Real tol = 1e-10);

// Smallest real shift r (in absolute value) making the proxy hold; returns 0
// when it already holds. Deterministic: candidate shifts are gap midpoints of
// the sorted mode-eigenvalue real parts plus one step past either end; ties
// prefer the more negative shift.
Real shift_to_invertible(const BoundaryOperator1D& A, int K, Real tol = 1e-10);

}  // namespace ebvp
