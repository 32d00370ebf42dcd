#pragma once

#include <vector>

#include "ebvp/types.hpp"

namespace ebvp {

struct SpectralEigenvalue {
  Complex value;
  int multiplicity = 0;
  char side = '-';  // '+' or '-'
};

// Projectors onto the generalized eigenspaces of a (possibly defective) matrix
// for eigenvalues with positive resp. non-positive real part.
struct SpectralSplit {
  Matrix chi_plus;
  Matrix chi_minus;
  std::vector<SpectralEigenvalue> spectrum;
  // a strictly positive real part fell inside the tolerance band and was
  // assigned to the minus side by the non-positive convention
  bool ambiguous = false;
  std::vector<Complex> flagged;

  // ordered Schur factors: U unitary with the plus cluster leading, and the
  // solution X of T11 X - X T22 = T12 decoupling the two blocks
  Matrix schur_U;
  Matrix coupling_X;
  Eigen::Index n_plus = 0;

  Eigen::Index dim() const { return chi_plus.rows(); }
  Eigen::Index plus_dim() const { return n_plus; }
  Eigen::Index minus_dim() const { return dim() - n_plus; }
};

// Complex Schur form, unitary eigenvalue reordering (plus cluster first), then
// the triangular Sylvester equation T11 X - X T22 = T12; chi_plus is
// U [I X; 0 0] U^*. Eigenvalues with Re <= realpart_tol go to the minus side.
SpectralSplit spectral_projectors(const Matrix& M, Real realpart_tol = 1e-10);

// Orthonormal bases of the two ranges. The plus range is the leading Schur
// vectors; the minus range is the orthonormalized span of U [-X; I].
Matrix chi_plus_range(const SpectralSplit& split);
Matrix chi_minus_range(const SpectralSplit& split);

}  // namespace ebvp
