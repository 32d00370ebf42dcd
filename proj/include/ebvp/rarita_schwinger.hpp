#pragma once

#include <utility>

#include "ebvp/symbol.hpp"
#include "ebvp/types.hpp"

namespace ebvp {

// Bundle maps of the spin-3/2 construction over a Dirac-type seed in dimension
// n >= 3 with fiber rank m. Vectors of C^n (x) C^m are stored with the covector
// index outermost: (e^i (x) v) has coordinates i*m .. i*m+m-1 equal to v.
struct RSBundleData {
  int n = 0;
  int m = 0;
  Matrix gamma;        // m x nm,  gamma(xi (x) v) = sigma(xi) v
  Matrix iota;         // nm x m,  iota(f) = (1/n) sum_i e^i (x) sigma(e_i)* f
  Matrix gamma_tilde;  // m x nm,  coefficient matrices conjugated (F side)
  Matrix iota_tilde;   // nm x m
  Matrix P32;          // nm x nm, orthogonal projector onto ker(gamma)
  Matrix P32_tilde;    // nm x nm, orthogonal projector onto ker(gamma_tilde)
  Matrix basis32;       // nm x (n-1)m, orthonormal basis of ker(gamma)
  Matrix basis32_tilde;  // nm x (n-1)m, orthonormal basis of ker(gamma_tilde)
  LinearSymbol seed;

  Eigen::Index reduced_dim() const { return static_cast<Eigen::Index>(n - 1) * m; }
};

// Builds all maps from a Dirac-type seed (identity metric) and verifies the
// structural identities at build time: gamma iota = id, iota^dag = (1/n) gamma,
// P32 = id - iota gamma Hermitian idempotent of rank (n-1)m.
// Rejects n < 3 and non-Dirac-type seeds (the failing Clifford pair is named).
RSBundleData build_rs(const LinearSymbol& dirac, const Metric& metric);

struct RSSymbolEvaluation {
  RealVector xi;
  Matrix matrix;        // (n-1)m x (n-1)m, in basis32 / basis32_tilde coordinates
  RealVector gram_eigs;  // eigenvalues of matrix^* matrix, ascending
};

// (id - iota~ gamma~)(id (x) sigma(xi)) restricted to ker(gamma), expressed in
// the stored orthonormal bases.
RSSymbolEvaluation rs_symbol(const RSBundleData& data, const RealVector& xi);

// The reduced symbol as a LinearSymbol (coefficient matrices in basis32
// coordinates), suitable for the generic symbol checks.
LinearSymbol rs_linear_symbol(const RSBundleData& data);

// Orthogonal decomposition of ker(gamma) along a nonzero covector:
// first block  = {phi in ker(gamma) : xi hook phi = 0}   (dimension (n-2)m)
// second block = (id - iota gamma)(xi (x) C^m)           (dimension m)
std::pair<Matrix, Matrix> decompose_along_xi(const RSBundleData& data,
                                             const RealVector& xi);

}  // namespace ebvp
