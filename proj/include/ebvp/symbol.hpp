#pragma once

#include <vector>

#include "ebvp/types.hpp"

namespace ebvp {

// Metric data in a fixed frame. g is the Gram matrix on covectors, so
// |xi|_g^2 = xi^T g xi and the Clifford relations below read
// s_i* s_j + s_j* s_i = 2 g_ij id.
struct Metric {
  RealMatrix g;

  static Metric identity(int n);
  int dimension() const { return static_cast<int>(g.rows()); }
  Real covector_norm(const RealVector& xi) const;
  // G^{-1/2}; maps Euclidean unit covectors onto the g-unit sphere.
  RealMatrix inverse_sqrt() const;
  // symmetric to 1e-12 and positive definite, else ConfigError
  void validate() const;
};

// sigma(xi) = sum_i xi_i coeffs[i], each coefficient rF x rE.
struct LinearSymbol {
  std::vector<Matrix> coeffs;

  int dimension() const { return static_cast<int>(coeffs.size()); }
  Eigen::Index rows() const { return coeffs.empty() ? 0 : coeffs.front().rows(); }
  Eigen::Index cols() const { return coeffs.empty() ? 0 : coeffs.front().cols(); }
  bool square() const { return rows() == cols(); }
  // n >= 1 and uniform coefficient shapes, else ConfigError
  void validate() const;
  // largest coefficient operator norm; the reference scale for tolerances
  Real scale() const;
};

Matrix evaluate(const LinearSymbol& s, const RealVector& xi);

struct SymbolReport {
  bool elliptic = false;
  bool dirac_type = false;
  Real norm_bound_C = 0;
  Real min_sv = 0;
  RealVector witness_xi;
  Real clifford_residual = 0;
  // false flags a non-square symbol, which is reported non-elliptic as data
  bool square = true;
};

// Full report: min/max singular values over the g-unit sphere (sampled grid
// plus local refinement), Clifford residual, and the ellipticity verdict
// min_sv > tol * scale(). tol is relative to the coefficient scale.
SymbolReport check_ellipticity(const LinearSymbol& s, const Metric& metric,
                               int sphere_samples = 2048, Real tol = 1e-9);

// max over i <= j of |s_i* s_j + s_j* s_i - 2 g_ij id|
Real clifford_residual(const LinearSymbol& s, const Metric& metric);
bool check_dirac_type(const LinearSymbol& s, const Metric& metric, Real tol = 1e-9);

// Smallest sampled constant C with |sigma(xi)| <= C |xi|_g: the maximum of the
// largest singular value over the g-unit sphere.
Real operator_norm_bound(const LinearSymbol& s, const Metric& metric,
                         int sphere_samples = 2048);

// Hermitian unitary pairwise-anticommuting generators on C^(2^ceil(n/2)),
// built by the standard recursion from the Pauli matrices.
std::vector<Matrix> clifford_generators(int n);

// Dirac-type symbol with the identity metric in dimension n.
LinearSymbol dirac_symbol(int n);

// Dirac-type symbol for a general SPD metric: coefficients sum_j (g^(1/2))_ij gamma_j.
LinearSymbol dirac_symbol(const Metric& metric);

// sigma(xi) = xi wedge . + xi-sharp hook . on the full form bundle of R^n
// (rank 2^n, basis indexed by subsets in bitmask order). Dirac-type for the
// identity metric; sigma(e_1) interchanges forms with and without an e_1 factor.
LinearSymbol forms_symbol(int n);

// Orthogonal projector onto the span of form-basis elements containing e_1
// (the "normal part" when e_1 is the conormal), complementary to the
// tangential forms. Used by the interchange check on the forms model.
Matrix forms_normal_projector(int n);

}  // namespace ebvp
