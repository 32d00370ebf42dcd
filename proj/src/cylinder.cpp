#include "ebvp/cylinder.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "ebvp/parallel.hpp"
#include "ebvp/subspace.hpp"

namespace ebvp {

namespace {

// A (+) (-A) on the doubled fiber; the scalar shift is folded into b so both
// blocks can carry opposite signs
BoundaryOperator1D joint_operator(const BoundaryOperator1D& A) {
  const Eigen::Index r = A.fiber_rank();
  BoundaryOperator1D joint;
  joint.a = Matrix::Zero(2 * r, 2 * r);
  joint.a.topLeftCorner(r, r) = A.a;
  joint.a.bottomRightCorner(r, r) = -A.a;
  const Matrix b_eff = A.b + A.shift * Matrix::Identity(r, r);
  joint.b = Matrix::Zero(2 * r, 2 * r);
  joint.b.topLeftCorner(r, r) = b_eff;
  joint.b.bottomRightCorner(r, r) = -b_eff;
  joint.shift = 0;
  return joint;
}

Matrix sigma0_joint(Eigen::Index r) {
  Matrix s = Matrix::Identity(2 * r, 2 * r);
  s.bottomRightCorner(r, r) *= -1;
  return s;
}

// first derivative, second order: one-sided rows at both ends
RealMatrix d1_matrix(int N, Real h) {
  RealMatrix d = RealMatrix::Zero(N, N);
  d(0, 0) = -3 / (2 * h);
  d(0, 1) = 4 / (2 * h);
  d(0, 2) = -1 / (2 * h);
  for (int i = 1; i + 1 < N; ++i) {
    d(i, i - 1) = -1 / (2 * h);
    d(i, i + 1) = 1 / (2 * h);
  }
  d(N - 1, N - 1) = 3 / (2 * h);
  d(N - 1, N - 2) = -4 / (2 * h);
  d(N - 1, N - 3) = 1 / (2 * h);
  return d;
}

RealMatrix d1_periodic(int N, Real h) {
  RealMatrix d = RealMatrix::Zero(N, N);
  for (int i = 0; i < N; ++i) {
    d(i, (i + 1) % N) += 1 / (2 * h);
    d(i, (i + N - 1) % N) -= 1 / (2 * h);
  }
  return d;
}

RealVector trapezoid_weights(int N, Real h) {
  RealVector w = RealVector::Constant(N, h);
  w(0) = h / 2;
  w(N - 1) = h / 2;
  return w;
}

struct NullityResult {
  int nullity = 0;
  Real rank_gap = 0;
  std::vector<Real> sv_tail;
};

NullityResult nullity_of(const Matrix& system, Real svd_tol) {
  Eigen::BDCSVD<Matrix> svd(system);
  const RealVector& sv = svd.singularValues();
  const Eigen::Index total = sv.size();
  NullityResult out;
  if (total == 0) {
    out.rank_gap = std::numeric_limits<Real>::infinity();
    return out;
  }
  const Real cutoff = svd_tol * sv(0);
  Eigen::Index rank = 0;
  while (rank < total && sv(rank) > cutoff) ++rank;
  out.nullity = static_cast<int>(total - rank);
  // separation between retained and discarded singular values; against the
  // cutoff itself when nothing was discarded
  if (rank == 0) {
    out.rank_gap = std::numeric_limits<Real>::infinity();
  } else {
    const Real floor_sv = rank == total ? cutoff : sv(rank);
    out.rank_gap = floor_sv > 0 ? sv(rank - 1) / floor_sv
                                : std::numeric_limits<Real>::infinity();
  }
  const Eigen::Index tail = std::min<Eigen::Index>(6, total);
  for (Eigen::Index i = total - tail; i < total; ++i) out.sv_tail.push_back(sv(i));
  std::reverse(out.sv_tail.begin(), out.sv_tail.end());  // ascending
  return out;
}

Matrix end_subspace(const EndCondition& cond, const SpectralSplit& split, int k,
                    int K, Eigen::Index r) {
  struct Visitor {
    const SpectralSplit& split;
    int k;
    int K;
    Eigen::Index r;

    Matrix operator()(const APSCondition&) const { return chi_minus_range(split); }
    Matrix operator()(const GraphBC& bc) const {
      if (bc.K != K) throw ConfigError("end condition: mode range mismatch");
      const GraphBlock& blk = bc.block(k);
      if (blk.fiber_dim() != r)
        throw ConfigError("end condition: graph block fiber mismatch");
      blk.validate(split);
      return blk.subspace_basis();
    }
    Matrix operator()(const LocalCondition& local) const {
      if (local.P.rows() != r || local.P.cols() != r)
        throw ConfigError("end condition: local projector must be fiber-sized");
      return orthonormal_basis(local.P);
    }
    Matrix operator()(const PseudoLocalCondition& pseudo) const {
      if (pseudo.blocks.size() != static_cast<size_t>(2 * K + 1))
        throw ConfigError("end condition: need one projector block per mode");
      const Matrix& P = pseudo.blocks[static_cast<size_t>(k + K)];
      if (P.rows() != r || P.cols() != r)
        throw ConfigError("end condition: projector block must be fiber-sized");
      return orthonormal_basis(P);
    }
  };
  return std::visit(Visitor{split, k, K, r}, cond);
}

Complex inner_product(const Vector& x, const Vector& y) {
  // <x, y>: linear in x, conjugates y
  return y.dot(x);
}

}  // namespace

ModeSplits CylinderModel::joint_splits() const {
  return mode_split(joint_operator(A), K, realpart_tol);
}

CylinderModel CylinderModel::make(Real L, int K, int N, const BoundaryOperator1D& A,
                                  const EndCondition& left, const EndCondition& right,
                                  Real realpart_tol) {
  A.validate();
  if (!(L > 0)) throw ConfigError("cylinder: length must be positive");
  if (N < 4) throw ConfigError("cylinder: need at least 4 nodes");
  if (K < 0) throw ConfigError("cylinder: K must be non-negative");

  CylinderModel model;
  model.L = L;
  model.K = K;
  model.N = N;
  model.A = A;
  model.realpart_tol = realpart_tol;

  const Eigen::Index r = A.fiber_rank();
  const ModeSplits left_splits = mode_split(A, K, realpart_tol);
  const ModeSplits right_splits = mode_split(A.negated(), K, realpart_tol);
  const ModeSplits joint = mode_split(joint_operator(A), K, realpart_tol);

  model.bc.K = K;
  model.bc.blocks.resize(static_cast<size_t>(2 * K + 1));
  for (int k = -K; k <= K; ++k) {
    const Matrix Bl = end_subspace(left, left_splits.at(k), k, K, r);
    const Matrix Br = end_subspace(right, right_splits.at(k), k, K, r);
    Matrix joint_sub = Matrix::Zero(2 * r, Bl.cols() + Br.cols());
    joint_sub.block(0, 0, r, Bl.cols()) = Bl;
    joint_sub.block(r, Bl.cols(), r, Br.cols()) = Br;
    model.bc.blocks[static_cast<size_t>(k + K)] =
        to_graphical(joint_sub, joint.at(k));
  }
  return model;
}

CylinderModel CylinderModel::make_matching(Real L, int K, int N,
                                           const BoundaryOperator1D& A,
                                           Real realpart_tol) {
  A.validate();
  if (!(L > 0)) throw ConfigError("cylinder: length must be positive");
  if (N < 4) throw ConfigError("cylinder: need at least 4 nodes");
  CylinderModel model;
  model.L = L;
  model.K = K;
  model.N = N;
  model.A = A;
  model.realpart_tol = realpart_tol;
  model.bc = matching(A, K, realpart_tol).joint;
  model.matching_bc = true;
  return model;
}

ModeSystem assemble_mode(const CylinderModel& model, const Matrix& M,
                         const Matrix& bc_subspace_columns, int sign_dt) {
  const Eigen::Index r = M.rows();
  const int N = model.N;
  const Real h = model.spacing();
  const RealMatrix d1 = d1_matrix(N, h);

  ModeSystem sys;
  sys.ode_rows = Matrix::Zero(N * r, N * r);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (d1(i, j) != 0)
        sys.ode_rows.block(i * r, j * r, r, r) +=
            Real(sign_dt) * d1(i, j) * Matrix::Identity(r, r);
    }
    sys.ode_rows.block(i * r, i * r, r, r) += M;
  }

  const Matrix pi_b = projector_onto(bc_subspace_columns);
  if (pi_b.rows() != 2 * r)
    throw ConfigError("assemble_mode: boundary subspace must live on the doubled fiber");
  const Matrix membership = Matrix::Identity(2 * r, 2 * r) - pi_b;
  sys.bc_rows = Matrix::Zero(2 * r, N * r);
  sys.bc_rows.block(0, 0, 2 * r, r) = membership.leftCols(r);
  sys.bc_rows.block(0, (N - 1) * r, 2 * r, r) = membership.rightCols(r);

  sys.full = Matrix((N + 2) * r, N * r);
  sys.full.topRows(N * r) = sys.ode_rows;
  sys.full.bottomRows(2 * r) = sys.bc_rows;
  return sys;
}

std::vector<ModeSystem> assemble(const CylinderModel& model) {
  std::vector<ModeSystem> systems(static_cast<size_t>(2 * model.K + 1));
  for (int k = -model.K; k <= model.K; ++k)
    systems[static_cast<size_t>(k + model.K)] = assemble_mode(
        model, model.A.mode_matrix(k),
        model.bc.block(k).subspace_basis(), +1);
  return systems;
}

GraphBC cylinder_adjoint_condition(const CylinderModel& model) {
  const BoundaryOperator1D joint = joint_operator(model.A);
  const Matrix s0 = sigma0_joint(model.fiber_rank());
  const ModeSplits adjoint_splits =
      mode_split(joint.adjoint_adapted(s0), model.K, model.realpart_tol);
  return adjoint_condition(model.bc, s0, adjoint_splits);
}

IndexReport numerical_index(const CylinderModel& model, Real svd_tol,
                            Real gap_threshold) {
  const GraphBC dagger = cylinder_adjoint_condition(model);
  const int K = model.K;
  const size_t mode_count = static_cast<size_t>(2 * K + 1);

  std::vector<ModeIndexData> modes(mode_count);
  parallel_for(mode_count, [&](size_t idx) {
    const int k = static_cast<int>(idx) - K;
    const Matrix M = model.A.mode_matrix(k);
    const ModeSystem primal =
        assemble_mode(model, M, model.bc.block(k).subspace_basis(), +1);
    const NullityResult ker = nullity_of(primal.full, svd_tol);
    const ModeSystem dual =
        assemble_mode(model, M.adjoint(), dagger.block(k).subspace_basis(), -1);
    const NullityResult coker = nullity_of(dual.full, svd_tol);

    ModeIndexData data;
    data.k = k;
    data.dim_ker = ker.nullity;
    data.dim_coker = coker.nullity;
    data.rank_gap_ker = ker.rank_gap;
    data.rank_gap_coker = coker.rank_gap;
    data.sv_tail_ker = ker.sv_tail;
    data.sv_tail_coker = coker.sv_tail;
    modes[idx] = data;
  });

  IndexReport report;
  report.rank_gap = std::numeric_limits<Real>::infinity();
  for (const ModeIndexData& data : modes) {
    report.dim_ker += data.dim_ker;
    report.dim_coker += data.dim_coker;
    report.rank_gap = std::min(report.rank_gap,
                               std::min(data.rank_gap_ker, data.rank_gap_coker));
  }
  report.index = report.dim_ker - report.dim_coker;
  report.unreliable = report.rank_gap < gap_threshold;
  report.modes = std::move(modes);
  return report;
}

DeformationReport check_deformation(const CylinderModel& model, int steps,
                                    Real svd_tol, Real gap_threshold) {
  if (steps < 1) throw ConfigError("check_deformation: need at least one step");
  DeformationReport report;
  for (int i = 0; i <= steps; ++i) {
    const Real s = Real(i) / Real(steps);
    CylinderModel deformed = model;
    deformed.bc = deform(model.bc, s);
    report.s_values.push_back(s);
    report.reports.push_back(numerical_index(deformed, svd_tol, gap_threshold));
  }

  report.constant = true;
  for (const IndexReport& r : report.reports) {
    if (r.index != report.reports.front().index) {
      report.constant = false;
      break;
    }
  }
  if (!report.constant) {
    for (size_t i = 1; i < report.reports.size(); ++i) {
      if (report.reports[i].index != report.reports.front().index) {
        report.first_jump_s = report.s_values[i];
        break;
      }
    }
  }

  CylinderModel plain = model;
  plain.bc = aps(model.joint_splits());
  report.aps_index = numerical_index(plain, svd_tol, gap_threshold).index;
  report.expected_offset =
      static_cast<long>(model.bc.total_wplus()) -
      static_cast<long>(model.bc.total_wminus());
  report.observed_offset =
      static_cast<long>(report.reports.back().index) - report.aps_index;
  report.offset_matches =
      report.constant && report.expected_offset == report.observed_offset;
  return report;
}

namespace {

struct PeriodicIndexData {
  int nullity = 0;
  Real rank_gap = 0;
};

PeriodicIndexData periodic_mode_nullity(const Matrix& M, int N, Real L, Real svd_tol) {
  const Eigen::Index r = M.rows();
  const Real h = L / N;
  const RealMatrix d1 = d1_periodic(N, h);
  Matrix sys = Matrix::Zero(N * r, N * r);
  for (int i = 0; i < N; ++i) {
    for (int j = 0; j < N; ++j) {
      if (d1(i, j) != 0)
        sys.block(i * r, j * r, r, r) += d1(i, j) * Matrix::Identity(r, r);
    }
    sys.block(i * r, i * r, r, r) += M;
  }
  const NullityResult res = nullity_of(sys, svd_tol);
  return {res.nullity, res.rank_gap};
}

}  // namespace

MatchingReport check_matching(const BoundaryOperator1D& A_N, Real L, int K, int N,
                              const std::vector<Real>& cut_fractions, Real svd_tol,
                              Real gap_threshold, Real realpart_tol) {
  MatchingReport report;

  // circle of circumference L in t: square per-mode systems, so kernel and
  // cokernel coincide dimension-wise and only near-singularity is informative
  Real uncut_gap = std::numeric_limits<Real>::infinity();
  int uncut_ker = 0;
  for (int k = -K; k <= K; ++k) {
    const PeriodicIndexData data =
        periodic_mode_nullity(A_N.mode_matrix(k), N, L, svd_tol);
    uncut_ker += data.nullity;
    uncut_gap = std::min(uncut_gap, data.rank_gap);
  }
  report.uncut_index = 0;
  if (uncut_gap < gap_threshold) report.unreliable = true;

  const CylinderModel matched =
      CylinderModel::make_matching(L, K, N, A_N, realpart_tol);
  const IndexReport matched_report = numerical_index(matched, svd_tol, gap_threshold);
  report.matching_index = matched_report.index;
  report.unreliable = report.unreliable || matched_report.unreliable;

  const CylinderModel aps_pair = CylinderModel::make(
      L, K, N, A_N, APSCondition{}, APSCondition{}, realpart_tol);
  const IndexReport aps_report = numerical_index(aps_pair, svd_tol, gap_threshold);
  report.aps_pair_index = aps_report.index;
  report.unreliable = report.unreliable || aps_report.unreliable;

  report.all_equal = report.uncut_index == report.matching_index &&
                     report.matching_index == report.aps_pair_index;

  report.cut_invariant = true;
  for (Real f : cut_fractions) {
    if (!(f > 0 && f < 1))
      throw ConfigError("check_matching: cut fractions must lie strictly inside (0,1)");
    const int n_left = std::max(8, static_cast<int>(std::lround(f * N)));
    const int n_right = std::max(8, static_cast<int>(std::lround((1 - f) * N)));
    const CylinderModel left = CylinderModel::make(
        f * L, K, n_left, A_N, APSCondition{}, APSCondition{}, realpart_tol);
    const CylinderModel right = CylinderModel::make(
        (1 - f) * L, K, n_right, A_N, APSCondition{}, APSCondition{}, realpart_tol);
    const IndexReport left_report = numerical_index(left, svd_tol, gap_threshold);
    const IndexReport right_report = numerical_index(right, svd_tol, gap_threshold);
    MatchingReport::CutCheck check;
    check.cut = f;
    check.left_index = left_report.index;
    check.right_index = right_report.index;
    check.additive =
        check.left_index + check.right_index == report.aps_pair_index;
    report.unreliable =
        report.unreliable || left_report.unreliable || right_report.unreliable;
    report.cut_invariant = report.cut_invariant && check.additive;
    report.cuts.push_back(check);
  }

  std::ostringstream detail;
  detail << "uncut " << report.uncut_index << " (kernel " << uncut_ker
         << "), matching " << report.matching_index << ", two-sided spectral "
         << report.aps_pair_index;
  report.detail = detail.str();
  return report;
}

DiscreteSection band_limited_section(const CylinderModel& model, int band_limit,
                                     int seed_tag) {
  if (band_limit < 0) throw ConfigError("band_limited_section: band limit must be >= 0");
  const Eigen::Index r = model.fiber_rank();
  const int N = model.N;
  const Real h = model.spacing();

  // low-discrepancy coefficients; the underlying function of t is independent
  // of N, so refinement studies sample one fixed smooth section
  auto coefficient = [&](int k, Eigen::Index c, int j, int part) {
    const long long key = 1000003LL * seed_tag + 7919LL * (k + model.K) +
                          613LL * static_cast<long long>(c) + 37LL * j + 11LL * part;
    const Real golden = 0.61803398874989484820;
    Real x = std::fmod(0.5 + golden * static_cast<Real>(key), 1.0);
    if (x < 0) x += 1.0;
    return (2 * x - 1) / (1 + Real(j) * Real(j));
  };

  DiscreteSection section;
  section.K = model.K;
  section.modes.resize(static_cast<size_t>(2 * model.K + 1));
  for (int k = -model.K; k <= model.K; ++k) {
    Matrix values = Matrix::Zero(r, N);
    for (Eigen::Index c = 0; c < r; ++c) {
      for (int i = 0; i < N; ++i) {
        const Real t = i * h;
        Complex acc(0, 0);
        for (int j = 0; j <= band_limit; ++j) {
          const Real phase = Real(M_PI) * j * t / model.L;
          acc += Complex(coefficient(k, c, j, 0), coefficient(k, c, j, 1)) *
                 std::cos(phase);
          acc += Complex(coefficient(k, c, j, 2), coefficient(k, c, j, 3)) *
                 std::sin(phase);
        }
        values(c, i) = acc;
      }
    }
    section.modes[static_cast<size_t>(k + model.K)] = values;
  }
  return section;
}

Real greens_pairing_residual(const CylinderModel& model, const DiscreteSection& u,
                             const DiscreteSection& v) {
  if (u.K != model.K || v.K != model.K)
    throw ConfigError("greens_pairing_residual: section mode range mismatch");
  const int N = model.N;
  const Real h = model.spacing();
  const RealMatrix d1 = d1_matrix(N, h);
  const RealVector w = trapezoid_weights(N, h);

  Complex total(0, 0);
  for (int k = -model.K; k <= model.K; ++k) {
    const Matrix M = model.A.mode_matrix(k);
    const Matrix& uk = u.mode(k);
    const Matrix& vk = v.mode(k);
    if (uk.cols() != N || vk.cols() != N)
      throw ConfigError("greens_pairing_residual: section grid mismatch");
    const Matrix du = uk * d1.transpose() + M * uk;
    const Matrix dv = -(vk * d1.transpose()) + M.adjoint() * vk;
    for (int i = 0; i < N; ++i)
      total += w(i) * (inner_product(du.col(i), vk.col(i)) -
                       inner_product(uk.col(i), dv.col(i)));
    total += inner_product(uk.col(0), vk.col(0));
    total -= inner_product(uk.col(N - 1), vk.col(N - 1));
  }
  return std::abs(total);
}

SemigroupReport extension_semigroup_check(const BoundaryOperator1D& A, int K,
                                          const GraphBC& bc, Real T, int N_t) {
  A.validate();
  if (bc.K != K) throw ConfigError("extension_semigroup_check: mode range mismatch");
  if (!(T > 0) || N_t < 4)
    throw ConfigError("extension_semigroup_check: need T > 0 and at least 4 nodes");
  const Eigen::Index r = A.fiber_rank();
  const Real h = T / (N_t - 1);
  const RealMatrix d1 = d1_matrix(N_t, h);
  const RealVector w = trapezoid_weights(N_t, h);

  struct ModeData {
    Matrix M;
    RealVector eigs;
    Matrix vectors;
    Vector x;  // tested boundary value v + g v over the summed graph columns
    Vector v;  // its minus part
  };
  std::vector<ModeData> mode_data;
  Real lambda_min = std::numeric_limits<Real>::infinity();
  Real lambda_max = 0;

  for (int k = -K; k <= K; ++k) {
    ModeData data;
    data.M = A.mode_matrix(k);
    const Real scale = std::max(Real(1), data.M.cwiseAbs().maxCoeff());
    if ((data.M - data.M.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * scale)
      throw ConfigError(
          "extension_semigroup_check: mode matrix is not self-adjoint");
    Eigen::SelfAdjointEigenSolver<Matrix> es(data.M);
    data.eigs = es.eigenvalues();
    data.vectors = es.eigenvectors();
    for (Eigen::Index j = 0; j < data.eigs.size(); ++j) {
      const Real mu = std::abs(data.eigs(j));
      if (mu > 1e-12) {
        lambda_min = std::min(lambda_min, mu);
        lambda_max = std::max(lambda_max, mu);
      }
    }

    const GraphBlock& blk = bc.block(k);
    if (blk.fiber_dim() != r)
      throw ConfigError("extension_semigroup_check: condition fiber mismatch");
    data.v = Vector::Zero(r);
    data.x = Vector::Zero(r);
    if (blk.Vminus.cols() > 0) {
      for (Eigen::Index c = 0; c < blk.Vminus.cols(); ++c)
        data.v += blk.Vminus.col(c);
      data.x = data.v;
      if (blk.Vplus.cols() > 0) {
        Vector coords = Vector::Ones(blk.Vminus.cols());
        data.x += blk.Vplus * (blk.g * coords);
      }
    }
    mode_data.push_back(std::move(data));
  }

  // e^{-t|M|} y via the eigendecomposition
  auto decay = [](const ModeData& data, Real t, const Vector& y) {
    Vector out = Vector::Zero(y.size());
    for (Eigen::Index j = 0; j < data.eigs.size(); ++j) {
      const Complex amp = data.vectors.col(j).dot(y);
      out += std::exp(-t * std::abs(data.eigs(j))) * amp * data.vectors.col(j);
    }
    return out;
  };

  SemigroupReport report;

  // evolution identity: (d/dt + M) e^{-t|M|} x = -2 |M| e^{-t|M|} v
  Real worst = 0;
  for (const ModeData& data : mode_data) {
    if (data.x.norm() == 0) continue;
    Matrix E(r, N_t);
    Matrix target = Matrix::Zero(r, N_t);
    for (int i = 0; i < N_t; ++i) {
      const Real t = i * h;
      E.col(i) = decay(data, t, data.x);
      const Vector vt = decay(data, t, data.v);
      for (Eigen::Index j = 0; j < data.eigs.size(); ++j) {
        const Complex amp = data.vectors.col(j).dot(vt);
        target.col(i) -= 2 * std::abs(data.eigs(j)) * amp * data.vectors.col(j);
      }
    }
    const Matrix applied = E * d1.transpose() + data.M * E;
    Real acc = 0;
    for (int i = 0; i < N_t; ++i)
      acc += w(i) * (applied.col(i) - target.col(i)).squaredNorm();
    worst = std::max(worst, std::sqrt(acc));
  }
  report.residual = worst;

  // square function int_0^inf t | |M|^{1/2} e^{-t|M|} x |^2 dt, quadrature on a
  // log grid against the closed-form eigenvalue sum
  if (lambda_max > 0) {
    const Real t_min = 1e-4 / lambda_max;
    const Real t_max = 30 / lambda_min;
    const int n_q = 400;
    const Real s_min = std::log(t_min);
    const Real s_max = std::log(t_max);
    const Real ds = (s_max - s_min) / (n_q - 1);
    Real quad = 0;
    for (int i = 0; i < n_q; ++i) {
      const Real t = std::exp(s_min + i * ds);
      Real f = 0;
      for (const ModeData& data : mode_data) {
        if (data.x.norm() == 0) continue;
        for (Eigen::Index j = 0; j < data.eigs.size(); ++j) {
          const Real mu = std::abs(data.eigs(j));
          if (mu <= 1e-12) continue;
          const Real c2 = std::norm(data.vectors.col(j).dot(data.x));
          f += t * mu * std::exp(-2 * t * mu) * c2;
        }
      }
      const Real weight = (i == 0 || i == n_q - 1) ? ds / 2 : ds;
      quad += weight * f * t;  // dt = t ds
    }
    Real exact = 0;
    for (const ModeData& data : mode_data) {
      if (data.x.norm() == 0) continue;
      for (Eigen::Index j = 0; j < data.eigs.size(); ++j) {
        const Real mu = std::abs(data.eigs(j));
        if (mu <= 1e-12) continue;
        exact += std::norm(data.vectors.col(j).dot(data.x)) / (4 * mu);
      }
    }
    report.square_function = quad;
    report.square_function_exact = exact;
    report.relative_gap = exact > 0 ? std::abs(quad - exact) / exact : 0;
  }
  return report;
}

}  // namespace ebvp
