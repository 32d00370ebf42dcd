#include "ebvp/boundary_conditions.hpp"

#include <Eigen/LU>
#include <Eigen/SVD>
#include <cmath>
#include <initializer_list>

#include "ebvp/subspace.hpp"

namespace ebvp {

namespace {

Real op_norm(const Matrix& M) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return svd.singularValues()(0);
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw ConfigError(msg);
}

// column concatenation tolerant of zero-column blocks
Matrix hcat(std::initializer_list<const Matrix*> blocks, Eigen::Index rows) {
  Eigen::Index cols = 0;
  for (const Matrix* blk : blocks) cols += blk->cols();
  Matrix out(rows, cols);
  Eigen::Index at = 0;
  for (const Matrix* blk : blocks) {
    out.middleCols(at, blk->cols()) = *blk;
    at += blk->cols();
  }
  return out;
}

}  // namespace

Matrix GraphBlock::subspace_basis() const {
  const Eigen::Index d = fiber_dim();
  Matrix out(d, Wplus.cols() + Vminus.cols());
  out.leftCols(Wplus.cols()) = Wplus;
  if (Vminus.cols() > 0) {
    Matrix graph_part = Vminus;
    if (Vplus.cols() > 0) graph_part += Vplus * g;
    out.rightCols(Vminus.cols()) = graph_part;
  }
  return out;
}

Matrix GraphBlock::graph_operator() const {
  const Eigen::Index d = fiber_dim();
  if (Vminus.cols() == 0 || Vplus.cols() == 0) return Matrix::Zero(d, d);
  // coordinates along the direct sum Vminus + Vplus + Wplus + Wminus
  const Matrix S = hcat({&Vminus, &Vplus, &Wplus, &Wminus}, d);
  if (S.cols() != d)
    throw ConfigError("graph block: V/W columns do not decompose the fiber");
  Eigen::FullPivLU<Matrix> lu(S);
  if (!lu.isInvertible())
    throw ConfigError("graph block: V/W columns do not decompose the fiber");
  const Matrix extract = lu.inverse().topRows(Vminus.cols());
  return Vplus * g * extract;
}

Real GraphBlock::graph_norm() const { return op_norm(g); }

void GraphBlock::validate(const SpectralSplit& split, Real tol) const {
  const Eigen::Index d = split.dim();
  require(Vminus.rows() == d && Vplus.rows() == d && Wminus.rows() == d &&
              Wplus.rows() == d,
          "graph block: fiber dimension mismatch with the split");
  require(g.rows() == Vplus.cols() && g.cols() == Vminus.cols(),
          "graph block: g must map Vminus coordinates to Vplus coordinates");
  auto orthonormal = [&](const Matrix& X, const char* name) {
    if (X.cols() == 0) return;
    const Real dev =
        (X.adjoint() * X - Matrix::Identity(X.cols(), X.cols())).cwiseAbs().maxCoeff();
    require(dev <= tol, std::string("graph block: ") + name + " is not orthonormal");
  };
  orthonormal(Vminus, "Vminus");
  orthonormal(Vplus, "Vplus");
  orthonormal(Wminus, "Wminus");
  orthonormal(Wplus, "Wplus");
  require(Vminus.cols() + Wminus.cols() == split.minus_dim(),
          "graph block: Vminus and Wminus do not fill the minus range");
  require(Vplus.cols() + Wplus.cols() == split.plus_dim(),
          "graph block: Vplus and Wplus do not fill the plus range");
  const Matrix pm = projector_onto(chi_minus_range(split));
  const Matrix pp = projector_onto(chi_plus_range(split));
  auto contained = [&](const Matrix& X, const Matrix& proj, const char* name) {
    if (X.cols() == 0) return;
    require((proj * X - X).cwiseAbs().maxCoeff() <= tol,
            std::string("graph block: ") + name + " leaves its spectral half");
  };
  contained(Vminus, pm, "Vminus");
  contained(Wminus, pm, "Wminus");
  contained(Vplus, pp, "Vplus");
  contained(Wplus, pp, "Wplus");
  if (Vminus.cols() > 0 && Wminus.cols() > 0)
    require((Vminus.adjoint() * Wminus).cwiseAbs().maxCoeff() <= tol,
            "graph block: Vminus and Wminus overlap");
  if (Vplus.cols() > 0 && Wplus.cols() > 0)
    require((Vplus.adjoint() * Wplus).cwiseAbs().maxCoeff() <= tol,
            "graph block: Vplus and Wplus overlap");
}

Eigen::Index GraphBC::total_wplus() const {
  Eigen::Index total = 0;
  for (const GraphBlock& blk : blocks) total += blk.Wplus.cols();
  return total;
}

Eigen::Index GraphBC::total_wminus() const {
  Eigen::Index total = 0;
  for (const GraphBlock& blk : blocks) total += blk.Wminus.cols();
  return total;
}

Real GraphBC::max_graph_norm() const {
  Real worst = 0;
  for (const GraphBlock& blk : blocks) worst = std::max(worst, blk.graph_norm());
  return worst;
}

GraphBlock aps_block(const SpectralSplit& split) {
  GraphBlock blk;
  blk.Vminus = chi_minus_range(split);
  blk.Vplus = chi_plus_range(split);
  blk.Wminus = Matrix(split.dim(), 0);
  blk.Wplus = Matrix(split.dim(), 0);
  blk.g = Matrix::Zero(blk.Vplus.cols(), blk.Vminus.cols());
  return blk;
}

GraphBC aps(const ModeSplits& splits) {
  GraphBC bc;
  bc.K = splits.K;
  bc.blocks.reserve(splits.splits.size());
  for (const SpectralSplit& split : splits.splits) bc.blocks.push_back(aps_block(split));
  return bc;
}

GraphBC deform(const GraphBC& bc, Real s) {
  GraphBC out = bc;
  for (GraphBlock& blk : out.blocks) blk.g *= s;
  return out;
}

GraphBlock to_graphical(const Matrix& subspace_columns, const SpectralSplit& split,
                        Real rel_tol) {
  const Eigen::Index d = split.dim();
  if (subspace_columns.rows() != d)
    throw ConfigError("to_graphical: subspace lives in the wrong fiber dimension");
  const Matrix B = orthonormal_basis(subspace_columns, rel_tol);
  const Matrix Xm = chi_minus_range(split);
  const Matrix Xp = chi_plus_range(split);

  GraphBlock blk;
  blk.Wplus = intersect(B, Xp, rel_tol);
  const Matrix B1 = complement_within(B, blk.Wplus, rel_tol);
  const Matrix CmB1 = split.chi_minus * B1;
  blk.Vminus = orthonormal_basis(CmB1, rel_tol);
  blk.Vplus = complement_within(Xp, blk.Wplus, rel_tol);
  blk.Wminus = complement_within(Xm, blk.Vminus, rel_tol);

  // chi_minus is injective on B1, so each Vminus column lifts uniquely into B1
  blk.g = Matrix::Zero(blk.Vplus.cols(), blk.Vminus.cols());
  if (blk.Vminus.cols() > 0) {
    if (CmB1.cols() != blk.Vminus.cols())
      throw ConfigError("to_graphical: subspace is not graphical over the split");
    Eigen::CompleteOrthogonalDecomposition<Matrix> cod(CmB1);
    const Matrix coeff = cod.solve(blk.Vminus);
    const Real residual = (CmB1 * coeff - blk.Vminus).cwiseAbs().maxCoeff();
    if (residual > 1e-8)
      throw ConfigError("to_graphical: failed to lift the minus trace into the subspace");
    const Matrix lifted = B1 * coeff;
    if (blk.Vplus.cols() > 0) blk.g = blk.Vplus.adjoint() * (split.chi_plus * lifted);
  }
  return blk;
}

GraphBC adjoint_condition(const GraphBC& bc, const Matrix& sigma0,
                          const ModeSplits& adjoint_splits) {
  if (bc.K != adjoint_splits.K)
    throw ConfigError("adjoint_condition: mode range mismatch");
  Eigen::FullPivLU<Matrix> lu(sigma0.adjoint());
  if (sigma0.rows() != sigma0.cols() || !lu.isInvertible())
    throw ConfigError("adjoint_condition: sigma0 must be square and invertible");
  const Matrix s_inv = lu.inverse();

  GraphBC out;
  out.K = bc.K;
  out.blocks.reserve(bc.blocks.size());
  for (size_t idx = 0; idx < bc.blocks.size(); ++idx) {
    const GraphBlock& blk = bc.blocks[idx];
    const Eigen::Index d = blk.fiber_dim();
    if (sigma0.rows() != d)
      throw ConfigError("adjoint_condition: sigma0 dimension mismatch with the fiber");

    // annihilator of the condition subspace from the graphical data:
    // everything orthogonal to Vminus, Vplus, Wplus, plus (id - G^*) applied to
    // the complement of Vminus, Wplus, Wminus
    const Matrix seen = hcat({&blk.Vminus, &blk.Vplus, &blk.Wplus}, d);
    const Matrix w_tilde = orthogonal_complement(seen, d);

    const Matrix other = hcat({&blk.Vminus, &blk.Wplus, &blk.Wminus}, d);
    const Matrix v_tilde = orthogonal_complement(other, d);

    const Matrix G = blk.graph_operator();
    const Matrix graph_part = (Matrix::Identity(d, d) - G.adjoint()) * v_tilde;
    const Matrix annihilator = hcat({&w_tilde, &graph_part}, d);

    const Matrix dagger = s_inv * annihilator;
    out.blocks.push_back(
        to_graphical(dagger, adjoint_splits.splits[idx]));
  }
  return out;
}

MatchingBC matching(const BoundaryOperator1D& A_N, int K, Real tol) {
  A_N.validate();
  if (!is_invertible_bisectorial_proxy(A_N, K, tol))
    throw ConfigError(
        "matching: a mode eigenvalue lies on or near the imaginary axis; "
        "shift the operator first (shift_to_invertible)");
  const ModeSplits splits = mode_split(A_N, K, tol);
  const Eigen::Index r = A_N.fiber_rank();

  MatchingBC out;
  out.A_N = A_N;
  out.joint.K = K;
  out.joint.blocks.reserve(splits.splits.size());
  for (const SpectralSplit& split : splits.splits) {
    const Matrix Bm = chi_minus_range(split);
    const Matrix Bp = chi_plus_range(split);
    const Eigen::Index m = Bm.cols();
    const Eigen::Index p = Bp.cols();

    GraphBlock blk;
    blk.Vminus = Matrix::Zero(2 * r, m + p);
    blk.Vminus.topLeftCorner(r, m) = Bm;
    blk.Vminus.bottomRightCorner(r, p) = Bp;
    blk.Vplus = Matrix::Zero(2 * r, p + m);
    blk.Vplus.topLeftCorner(r, p) = Bp;
    blk.Vplus.bottomRightCorner(r, m) = Bm;
    blk.Wminus = Matrix(2 * r, 0);
    blk.Wplus = Matrix(2 * r, 0);
    // swapping the coordinate groups turns the graph into the diagonal
    blk.g = Matrix::Zero(p + m, m + p);
    blk.g.topRightCorner(p, p) = Matrix::Identity(p, p);
    blk.g.bottomLeftCorner(m, m) = Matrix::Identity(m, m);
    out.joint.blocks.push_back(blk);
  }
  return out;
}

LSResult ls_check(const PseudoLocalBC& P,
                  const std::function<Matrix(const RealVector&)>& A_symbol,
                  const std::function<Matrix(const RealVector&)>& A_star_symbol,
                  const std::vector<RealVector>& xi_samples, Real tol) {
  if (!P.projector_symbol)
    throw ConfigError("ls_check: missing projector symbol");
  if (!A_symbol || !A_star_symbol)
    throw ConfigError("ls_check: missing adapted symbol callbacks");

  LSResult result;
  const Complex iunit(0, 1);
  auto run_side = [&](const Matrix& proj, const Matrix& adapted,
                      const RealVector& xi, const char* side) {
    const Matrix range = orthonormal_basis(proj);
    const SpectralSplit split = spectral_projectors(iunit * adapted);
    const Matrix negative = chi_minus_range(split);

    LSWitness wit;
    wit.xi = xi;
    wit.side = side;
    wit.dim_negative_space = negative.cols();
    wit.dim_range = range.cols();
    if (negative.cols() != range.cols()) {
      wit.min_sv = 0;
      result.failures.push_back(wit);
      return;
    }
    if (range.cols() == 0) return;
    Eigen::JacobiSVD<Matrix> svd(range.adjoint() * (proj * negative));
    wit.min_sv = svd.singularValues()(svd.singularValues().size() - 1);
    if (!(wit.min_sv > tol)) result.failures.push_back(wit);
  };

  for (const RealVector& xi : xi_samples) {
    run_side(P.projector_symbol(xi), A_symbol(xi), xi, "P");
    run_side(P.projector_symbol(xi).adjoint(), A_star_symbol(xi), xi, "P*");
  }
  result.pass = result.failures.empty();
  return result;
}

bool local_interchange_check(const Matrix& Eprime_projector,
                             const std::function<Matrix(const RealVector&)>& A_symbol,
                             const std::vector<RealVector>& xi_samples, Real tol) {
  const Matrix& Q = Eprime_projector;
  if (Q.rows() != Q.cols())
    throw ConfigError("local_interchange_check: projector must be square");
  const Real qscale = std::max(Real(1), op_norm(Q));
  if ((Q * Q - Q).cwiseAbs().maxCoeff() > 1e-10 * qscale ||
      (Q - Q.adjoint()).cwiseAbs().maxCoeff() > 1e-10 * qscale)
    throw ConfigError("local_interchange_check: not an orthogonal projector");
  const Matrix Qc = Matrix::Identity(Q.rows(), Q.cols()) - Q;
  for (const RealVector& xi : xi_samples) {
    const Matrix sigma = A_symbol(xi);
    const Real scale = std::max(Real(1), op_norm(sigma));
    if (op_norm(Q * sigma * Q) > tol * scale) return false;
    if (op_norm(Qc * sigma * Qc) > tol * scale) return false;
  }
  return true;
}

}  // namespace ebvp
