#pragma once

#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "ebvp/adapted.hpp"
#include "ebvp/spectral.hpp"
#include "ebvp/types.hpp"

namespace ebvp {

// One Fourier mode of a boundary condition in graphical normal form
//   B = span(Wplus)  (+)  { v + g v : v in span(Vminus) }.
// Vminus/Vplus/Wminus/Wplus are orthonormal column bases; within each spectral
// half, V and W are orthogonal complements of each other. g maps Vminus
// coordinates to Vplus coordinates.
struct GraphBlock {
  Matrix Vminus;
  Matrix Vplus;
  Matrix Wminus;
  Matrix Wplus;
  Matrix g;

  Eigen::Index fiber_dim() const { return Vminus.rows(); }
  // columns spanning the condition subspace: [Wplus, Vminus + Vplus g]
  Matrix subspace_basis() const;
  // g as a fiber operator: zero on Vplus + Wplus + Wminus, Vplus g coords on Vminus
  Matrix graph_operator() const;
  Real graph_norm() const;
  // Def-conformance against a split: V(-) + W(-) spans ran(chi-), likewise +,
  // orthonormality, shape of g. Throws ConfigError on violation.
  void validate(const SpectralSplit& split, Real tol = 1e-8) const;
};

// Boundary condition stored per mode over k in [-K, K].
struct GraphBC {
  int K = 0;
  std::vector<GraphBlock> blocks;  // index k + K

  const GraphBlock& block(int k) const { return blocks.at(static_cast<size_t>(k + K)); }
  GraphBlock& block(int k) { return blocks.at(static_cast<size_t>(k + K)); }
  Eigen::Index total_wplus() const;
  Eigen::Index total_wminus() const;
  // uniform boundedness report for the graph map: max over modes of |g|
  Real max_graph_norm() const;
};

// APS condition: V- the full minus range, V+ the plus range, W = 0, g = 0.
GraphBC aps(const ModeSplits& splits);
GraphBlock aps_block(const SpectralSplit& split);

// g scaled by s; deform(bc, 1) = bc, deform(bc, 0) = Wplus (+) APS-part.
GraphBC deform(const GraphBC& bc, Real s);

// Graphical normal form of an arbitrary subspace with respect to a split:
// Wplus = B intersect ran(chi+), Vminus = chi-(B), g from the graph fibers,
// Wminus the complement of Vminus. In finite dimensions this always exists.
GraphBlock to_graphical(const Matrix& subspace_columns, const SpectralSplit& split,
                        Real rel_tol = 1e-10);

// Adjoint condition: per mode the sigma0-twisted annihilator
//   B-dagger = (sigma0^*)^{-1} (B-perp),
// built from the graphical data (W~, V~, g*) and returned in graphical normal
// form with respect to the adjoint operator's splits.
GraphBC adjoint_condition(const GraphBC& bc, const Matrix& sigma0,
                          const ModeSplits& adjoint_splits);

// Matching condition on the doubled fiber C^{2r} over a cut: the diagonal
// subspace, presented graphically over the joint operator A (+) (-A) with
// V- = chi-(A) (+) chi+(A), the swap map g, and W = 0.
struct MatchingBC {
  GraphBC joint;
  BoundaryOperator1D A_N;
};

// Requires the invertibility proxy; on failure directs the caller to
// shift_to_invertible via ConfigError.
MatchingBC matching(const BoundaryOperator1D& A_N, int K, Real tol = 1e-10);

// Pseudo-local condition: a projector-valued symbol on unit boundary covectors,
// optionally realized as per-mode projector blocks on the circle; the condition
// subspace per mode is the projector's range.
struct PseudoLocalBC {
  std::function<Matrix(const RealVector&)> projector_symbol;
  std::vector<Matrix> mode_blocks;  // optional, index k + K over [-K, K]
  int K = 0;
};

struct LSWitness {
  RealVector xi;
  std::string side;  // "P" or "P*"
  Eigen::Index dim_negative_space = 0;
  Eigen::Index dim_range = 0;
  Real min_sv = 0;
};

struct LSResult {
  bool pass = false;
  std::vector<LSWitness> failures;
};

// Symbol-level boundary-regularity check: for each sampled unit covector the
// projector symbol must restrict to an isomorphism from the negative-real-part
// generalized eigenspace of i sigma_A(xi) onto its range, and likewise for the
// adjoint pair (P*, i sigma_A*(xi)). Dimension mismatches and rank collapses
// are reported as witnesses, not exceptions.
LSResult ls_check(const PseudoLocalBC& P,
                  const std::function<Matrix(const RealVector&)>& A_symbol,
                  const std::function<Matrix(const RealVector&)>& A_star_symbol,
                  const std::vector<RealVector>& xi_samples, Real tol = 1e-9);

// True iff sigma_A(xi) maps ran(Q) into ran(id - Q) and vice versa for every
// sample: Q sigma_A(xi) Q and (id-Q) sigma_A(xi) (id-Q) vanish within tol
// relative to |sigma_A(xi)|. Q must be an orthogonal projector.
bool local_interchange_check(const Matrix& Eprime_projector,
                             const std::function<Matrix(const RealVector&)>& A_symbol,
                             const std::vector<RealVector>& xi_samples,
                             Real tol = 1e-9);

// Per-end boundary condition declarations consumed by the cylinder model.
struct APSCondition {};
struct LocalCondition {
  Matrix P;  // constant projector; the condition subspace is ran(P) per mode
};
struct PseudoLocalCondition {
  std::vector<Matrix> blocks;  // per-mode projectors, index k + K
};
using EndCondition = std::variant<APSCondition, GraphBC, LocalCondition, PseudoLocalCondition>;

}  // namespace ebvp
