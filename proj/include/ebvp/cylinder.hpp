#pragma once

#include <optional>
#include <vector>

#include "ebvp/adapted.hpp"
#include "ebvp/boundary_conditions.hpp"
#include "ebvp/types.hpp"

namespace ebvp {

// Model operator D = d/dt + A on [0, L] x S^1, discretized on N time nodes
// (spacing h = L/(N-1)) with Fourier modes |k| <= K. The trace space per mode
// is C^{2r} = (value at t=0, value at t=L); the condition on it is stored as a
// joint GraphBC over the operator A (+) (-A) (the right end carries the
// orientation-reversed adapted operator). sigma_0 on the trace space is
// id (+) -id.
struct CylinderModel {
  Real L = 1;
  int K = 0;
  int N = 8;
  BoundaryOperator1D A;
  GraphBC bc;          // joint, fiber 2r
  bool matching_bc = false;
  Real realpart_tol = 1e-10;

  Real spacing() const { return L / (N - 1); }
  Eigen::Index fiber_rank() const { return A.fiber_rank(); }

  // Joint per-mode splits of A (+) (-A); index k + K.
  ModeSplits joint_splits() const;

  static CylinderModel make(Real L, int K, int N, const BoundaryOperator1D& A,
                            const EndCondition& left, const EndCondition& right,
                            Real realpart_tol = 1e-10);
  static CylinderModel make_matching(Real L, int K, int N, const BoundaryOperator1D& A,
                                     Real realpart_tol = 1e-10);
};

// One assembled Fourier mode: second-order finite differences (one-sided at the
// ends, centered inside) for the t-derivative plus the mode matrix, and the
// membership rows (id - Pi_B) [u(0); u(L)] = 0.
struct ModeSystem {
  Matrix ode_rows;  // N r x N r
  Matrix bc_rows;   // 2r x N r
  Matrix full;      // (N+2) r x N r
};

// sign_dt = +1 assembles d/dt + M, sign_dt = -1 assembles -d/dt + M.
ModeSystem assemble_mode(const CylinderModel& model, const Matrix& M,
                         const Matrix& bc_subspace_columns, int sign_dt);
std::vector<ModeSystem> assemble(const CylinderModel& model);

struct ModeIndexData {
  int k = 0;
  int dim_ker = 0;
  int dim_coker = 0;
  Real rank_gap_ker = 0;
  Real rank_gap_coker = 0;
  std::vector<Real> sv_tail_ker;    // smallest singular values of the system
  std::vector<Real> sv_tail_coker;  // smallest singular values of the adjoint system
};

struct IndexReport {
  int dim_ker = 0;
  int dim_coker = 0;
  int index = 0;
  Real rank_gap = 0;  // min over modes and both systems
  bool unreliable = false;
  std::vector<ModeIndexData> modes;
};

// Kernel from SVD rank deficiency of the assembled systems; cokernel from the
// adjoint systems assembled with the adjoint condition B-dagger (adjoint
// operator rows -d/dt + M^*). rank_gap below gap_threshold flags UNRELIABLE.
IndexReport numerical_index(const CylinderModel& model, Real svd_tol = 1e-8,
                            Real gap_threshold = 1e3);

// The joint adjoint condition used for the cokernel systems (exposed for
// oracle comparison in tests).
GraphBC cylinder_adjoint_condition(const CylinderModel& model);

struct DeformationReport {
  std::vector<Real> s_values;
  std::vector<IndexReport> reports;
  bool constant = false;
  std::optional<Real> first_jump_s;
  // Ind(B) - Ind(pure APS) compared against dim W+ - dim W-
  int aps_index = 0;
  long expected_offset = 0;
  long observed_offset = 0;
  bool offset_matches = false;
};

// Index along deform(bc, s) for s in {0, 1/steps, ..., 1}, plus the offset
// identity against the unmodified APS condition.
DeformationReport check_deformation(const CylinderModel& model, int steps,
                                    Real svd_tol = 1e-8, Real gap_threshold = 1e3);

struct MatchingReport {
  int uncut_index = 0;
  int matching_index = 0;
  int aps_pair_index = 0;
  bool all_equal = false;
  bool unreliable = false;
  struct CutCheck {
    Real cut;
    int left_index;
    int right_index;
    bool additive;  // left + right == aps_pair_index
  };
  std::vector<CutCheck> cuts;
  bool cut_invariant = false;
  std::string detail;
};

// Compares (a) the uncut circle-in-t problem (periodic in t, period L),
// (b) the cut cylinder with the matching condition, (c) the cut cylinder with
// APS at both cut faces; then re-cuts the APS cylinder at interior positions
// and checks index additivity across the cut.
MatchingReport check_matching(const BoundaryOperator1D& A_N, Real L, int K, int N,
                              const std::vector<Real>& cut_fractions,
                              Real svd_tol = 1e-8, Real gap_threshold = 1e3,
                              Real realpart_tol = 1e-10);

// Discrete sections: per-mode r x N value grids, mode index k + K.
struct DiscreteSection {
  int K = 0;
  std::vector<Matrix> modes;

  const Matrix& mode(int k) const { return modes.at(static_cast<size_t>(k + K)); }
  Matrix& mode(int k) { return modes.at(static_cast<size_t>(k + K)); }
};

// Deterministic band-limited section evaluated exactly on the grid (trig
// polynomials in t with fixed quasi-random coefficients; seed_tag separates u
// from v).
DiscreteSection band_limited_section(const CylinderModel& model, int band_limit,
                                     int seed_tag);

// |<Du, v> - <u, D+v> + <u|boundary, sigma0^* v|boundary>| with trapezoid
// quadrature; zero in the continuum, O(h^2) discretely.
Real greens_pairing_residual(const CylinderModel& model, const DiscreteSection& u,
                             const DiscreteSection& v);

struct SemigroupReport {
  Real residual = 0;           // discrete L2 residual of the evolution identity
  Real square_function = 0;    // quadrature value for the tested section
  Real square_function_exact = 0;  // closed-form eigenvalue sum
  Real relative_gap = 0;       // |quad - exact| / exact (0 when exact = 0)
};

// For self-adjoint per-mode A and a graphical condition with graph map g:
// builds E(v + gv)(t) = exp(-t|A|)(v + gv) per mode on an N_t-point grid over
// [0, T], applies the discrete D, and compares against -2|A| exp(-t|A|) v.
// Also evaluates the square function integral int t|A|^(1/2) e^(-t|A|) x |^2
// dt/t by log-grid quadrature against the closed-form sum_j |x_j|^2 / (4 mu_j).
// Rejects non-self-adjoint modes.
SemigroupReport extension_semigroup_check(const BoundaryOperator1D& A, int K,
                                          const GraphBC& bc, Real T, int N_t);

}  // namespace ebvp
