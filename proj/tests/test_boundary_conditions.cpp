#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "ebvp/boundary_conditions.hpp"
#include "ebvp/cylinder.hpp"
#include "ebvp/spectral.hpp"
#include "ebvp/subspace.hpp"
#include "oracles.hpp"

using namespace ebvp;
using ebvp::testing::Rng;
using ebvp::testing::brute_dagger_basis;
using ebvp::testing::eigen_minus_space;
using ebvp::testing::random_matrix;
using ebvp::testing::random_projector;
using ebvp::testing::random_unitary;

namespace {

Matrix hstack(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows(), a.cols() + b.cols());
  out.leftCols(a.cols()) = a;
  out.rightCols(b.cols()) = b;
  return out;
}

BoundaryOperator1D scalar_op(Complex a, Complex b) {
  BoundaryOperator1D op;
  op.a = Matrix::Constant(1, 1, a);
  op.b = Matrix::Constant(1, 1, b);
  return op;
}

Matrix pauli_x() {
  Matrix s(2, 2);
  s << 0, 1, 1, 0;
  return s;
}

Matrix pauli_z() {
  Matrix s(2, 2);
  s << 1, 0, 0, -1;
  return s;
}

// Random condition in graphical normal form over a split, derived from a
// random subspace of the fiber.
GraphBlock random_graph_block(const SpectralSplit& split, Eigen::Index dim, Rng& rng) {
  const Matrix cols = random_matrix(split.dim(), dim, rng);
  return to_graphical(orthonormal_basis(cols), split);
}

}  // namespace

TEST_CASE("aps condition selects the nonpositive spectral half per mode") {
  // mode matrix -k + 1/2: minus side exactly for k >= 1
  const BoundaryOperator1D op = scalar_op(Complex(0, 1), Complex(0.5, 0));
  const int K = 3;
  const ModeSplits splits = mode_split(op, K);
  const GraphBC bc = aps(splits);
  CHECK(bc.K == K);
  CHECK(bc.total_wplus() == 0);
  CHECK(bc.total_wminus() == 0);
  CHECK(bc.max_graph_norm() == 0);
  for (int k = -K; k <= K; ++k) {
    const GraphBlock& blk = bc.block(k);
    CHECK(blk.Vminus.cols() == (k >= 1 ? 1 : 0));
    CHECK(blk.Vplus.cols() == (k >= 1 ? 0 : 1));
    CHECK_NOTHROW(blk.validate(splits.at(k)));
    CHECK(spans_equal(blk.subspace_basis(), chi_minus_range(splits.at(k))));
  }
}

TEST_CASE("orientation reversal swaps the aps subspace to the plus half") {
  const BoundaryOperator1D op = scalar_op(Complex(0, 1), Complex(0.5, 0));
  const int K = 2;
  const ModeSplits fwd = mode_split(op, K);
  const ModeSplits rev = mode_split(op.negated(), K);
  const GraphBC bc_rev = aps(rev);
  for (int k = -K; k <= K; ++k) {
    // no eigenvalue sits on the axis here, so chi-(-A) = chi+(A)
    CHECK(spans_equal(bc_rev.block(k).subspace_basis(), chi_plus_range(fwd.at(k))));
  }
}

TEST_CASE("zero eigenvalue joins the minus side on both orientations") {
  const BoundaryOperator1D op = scalar_op(Complex(0, 1), Complex(0, 0));
  const ModeSplits fwd = mode_split(op, 0);
  const ModeSplits rev = mode_split(op.negated(), 0);
  CHECK(aps(fwd).block(0).Vminus.cols() == 1);
  CHECK(aps(rev).block(0).Vminus.cols() == 1);
}

TEST_CASE("deformation scales only the graph map") {
  Rng rng(401);
  const Matrix m = random_matrix(4, 4, rng) * 2.0;
  const SpectralSplit split = spectral_projectors(m);
  GraphBC bc;
  bc.K = 0;
  bc.blocks.push_back(random_graph_block(split, 2, rng));
  const GraphBlock& blk = bc.block(0);
  REQUIRE(blk.g.size() > 0);
  REQUIRE(blk.g.norm() > 1e-6);

  const GraphBC half = deform(bc, 0.5);
  CHECK((half.block(0).g - 0.5 * blk.g).norm() < 1e-14);
  CHECK((half.block(0).Vminus - blk.Vminus).norm() == 0);
  CHECK((half.block(0).Wplus - blk.Wplus).norm() == 0);
  CHECK(half.max_graph_norm() == doctest::Approx(0.5 * bc.max_graph_norm()));

  const GraphBC same = deform(bc, 1.0);
  CHECK((same.block(0).g - blk.g).norm() == 0);

  const GraphBC flat = deform(bc, 0.0);
  CHECK(flat.block(0).g.norm() == 0);
  // s = 0 leaves Wplus plus the pure minus part
  CHECK(spans_equal(flat.block(0).subspace_basis(), hstack(blk.Wplus, blk.Vminus)));
  CHECK_NOTHROW(flat.block(0).validate(split));
}

TEST_CASE("graphical normal form recovers random subspaces") {
  Rng rng(402);
  for (int trial = 0; trial < 25; ++trial) {
    const Eigen::Index d = 3 + trial % 3;
    const Matrix m = random_matrix(d, d, rng) * 2.0;
    const SpectralSplit split = spectral_projectors(m);
    const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng.next_int(0, static_cast<int>(d) - 1));
    const Matrix cols = orthonormal_basis(random_matrix(d, dim, rng));

    const GraphBlock blk = to_graphical(cols, split);
    CHECK_NOTHROW(blk.validate(split));
    CHECK(spans_equal(blk.subspace_basis(), cols));
    CHECK(blk.Vminus.cols() + blk.Wplus.cols() == dim);
    // Wplus is the plus-range intersection
    CHECK(blk.Wplus.cols() == intersect(cols, chi_plus_range(split)).cols());
  }
}

TEST_CASE("graphical form of the spectral halves is pure") {
  Rng rng(403);
  const Matrix m = random_matrix(5, 5, rng) * 2.0;
  const SpectralSplit split = spectral_projectors(m);

  const GraphBlock minus = to_graphical(chi_minus_range(split), split);
  CHECK(minus.Wplus.cols() == 0);
  CHECK(minus.Vminus.cols() == split.minus_dim());
  CHECK(minus.g.norm() < 1e-9);

  const GraphBlock plus = to_graphical(chi_plus_range(split), split);
  CHECK(plus.Wplus.cols() == split.plus_dim());
  CHECK(plus.Vminus.cols() == 0);
}

TEST_CASE("graphical form rejects a wrong fiber dimension") {
  Rng rng(404);
  const Matrix m = random_matrix(3, 3, rng);
  const SpectralSplit split = spectral_projectors(m);
  CHECK_THROWS_AS(to_graphical(Matrix::Identity(4, 2), split), ConfigError);
}

TEST_CASE("adjoint condition matches the brute-force annihilator") {
  Rng rng(405);
  const int K = 2;
  for (int trial = 0; trial < 12; ++trial) {
    const Eigen::Index r = 2 + trial % 3;
    BoundaryOperator1D A;
    A.a = random_matrix(r, r, rng);
    A.b = random_matrix(r, r, rng) * 2.0;
    const Matrix sigma0 = random_matrix(r, r, rng) + 3.0 * Matrix::Identity(r, r);

    const ModeSplits splits = mode_split(A, K);
    const ModeSplits tsplits = mode_split(A.adjoint_adapted(sigma0), K);

    GraphBC bc;
    bc.K = K;
    for (int k = -K; k <= K; ++k) {
      const Eigen::Index dim = 1 + static_cast<Eigen::Index>(rng.next_int(0, static_cast<int>(r) - 1));
      bc.blocks.push_back(random_graph_block(splits.at(k), dim, rng));
    }

    const GraphBC dagger = adjoint_condition(bc, sigma0, tsplits);
    for (int k = -K; k <= K; ++k) {
      const Matrix brute = brute_dagger_basis(bc.block(k).subspace_basis(), sigma0);
      CHECK(spans_equal(dagger.block(k).subspace_basis(), brute, 1e-10));
      CHECK_NOTHROW(dagger.block(k).validate(tsplits.at(k)));
    }
  }
}

TEST_CASE("double adjoint returns the original condition") {
  Rng rng(406);
  const int K = 1;
  const Eigen::Index r = 3;
  BoundaryOperator1D A;
  A.a = random_matrix(r, r, rng);
  A.b = random_matrix(r, r, rng) * 2.0;
  const Matrix sigma0 = random_matrix(r, r, rng) + 3.0 * Matrix::Identity(r, r);

  const ModeSplits splits = mode_split(A, K);
  const BoundaryOperator1D tilde = A.adjoint_adapted(sigma0);
  const ModeSplits tsplits = mode_split(tilde, K);

  // the adjoint problem carries conormal symbol -sigma0^*; twisting twice with
  // the matching conormals recovers the original subspace
  const Matrix sigma0_tilde = -sigma0.adjoint();
  const BoundaryOperator1D back = tilde.adjoint_adapted(sigma0_tilde);
  for (int k = -K; k <= K; ++k)
    CHECK((back.mode_matrix(k) - A.mode_matrix(k)).norm() < 1e-12);

  GraphBC bc;
  bc.K = K;
  for (int k = -K; k <= K; ++k)
    bc.blocks.push_back(random_graph_block(splits.at(k), 2, rng));

  const GraphBC dagger = adjoint_condition(bc, sigma0, tsplits);
  const GraphBC ddagger = adjoint_condition(dagger, sigma0_tilde, splits);
  for (int k = -K; k <= K; ++k)
    CHECK(spans_equal(ddagger.block(k).subspace_basis(), bc.block(k).subspace_basis(), 1e-9));
}

TEST_CASE("orthogonal splits express the adjoint through the conjugate graph map") {
  Rng rng(407);
  const Eigen::Index d = 4;
  const Matrix u = random_unitary(d, rng);
  Vector diag(d);
  diag << -2, -1, 1, 2;
  const Matrix H = u * diag.asDiagonal() * u.adjoint();

  BoundaryOperator1D A;
  A.a = Matrix::Zero(d, d);
  A.b = H;
  const ModeSplits splits = mode_split(A, 0);

  GraphBlock blk;
  blk.Vminus = u.col(0);
  blk.Wminus = u.col(1);
  blk.Vplus = u.col(2);
  blk.Wplus = u.col(3);
  blk.g = Matrix::Constant(1, 1, Complex(0.3, -0.7));
  REQUIRE_NOTHROW(blk.validate(splits.at(0)));

  GraphBC bc;
  bc.K = 0;
  bc.blocks.push_back(blk);

  // self-adjoint mode matrix: the adjoint operator is -(-H) = H itself when
  // sigma0 = id, so the same splits serve both sides
  const Matrix sigma0 = Matrix::Identity(d, d);
  const ModeSplits tsplits = mode_split(A.adjoint_adapted(sigma0), 0);
  const GraphBC dagger = adjoint_condition(bc, sigma0, tsplits);

  // expected: W-tilde-minus (+) { u - g* u : u in V-tilde-plus }, which for an
  // orthogonal split reads [Wminus | Vplus - Vminus g^*]
  const Matrix expected = hstack(blk.Wminus, blk.Vplus - blk.Vminus * blk.g.adjoint());
  CHECK(spans_equal(dagger.block(0).subspace_basis(), expected, 1e-10));
}

TEST_CASE("self-adjoint anticommuting model: aps equals its adjoint when the kernel vanishes") {
  // mode matrices (k + 1/2) sigma_z, conormal sigma_x: self-adjoint per mode,
  // anticommuting, never singular
  BoundaryOperator1D A;
  A.a = Complex(0, -1) * pauli_z();
  A.b = 0.5 * pauli_z();
  const Matrix sigma0 = pauli_x();
  const int K = 2;

  const ModeSplits splits = mode_split(A, K);
  const BoundaryOperator1D tilde = A.adjoint_adapted(sigma0);
  for (int k = -K; k <= K; ++k)
    CHECK((tilde.mode_matrix(k) - A.mode_matrix(k)).norm() < 1e-14);

  const GraphBC bc = aps(splits);
  const GraphBC dagger = adjoint_condition(bc, sigma0, mode_split(tilde, K));
  for (int k = -K; k <= K; ++k) {
    CHECK(nullspace(A.mode_matrix(k)).cols() == 0);
    CHECK(spans_equal(dagger.block(k).subspace_basis(), bc.block(k).subspace_basis(), 1e-10));
  }
}

TEST_CASE("self-adjoint anticommuting model: aps splits as adjoint plus kernel") {
  // mode matrices (k + 1/2) diag(1, -1, 0): one zero eigenvalue in every mode;
  // the swap of the first two coordinates anticommutes with them
  Matrix J = Matrix::Zero(3, 3);
  J(0, 0) = 1;
  J(1, 1) = -1;
  Matrix sigma0 = Matrix::Zero(3, 3);
  sigma0(0, 1) = 1;
  sigma0(1, 0) = 1;
  sigma0(2, 2) = 1;

  BoundaryOperator1D A;
  A.a = Complex(0, -1) * J;
  A.b = 0.5 * J;
  const int K = 2;

  const ModeSplits splits = mode_split(A, K);
  const BoundaryOperator1D tilde = A.adjoint_adapted(sigma0);
  for (int k = -K; k <= K; ++k)
    CHECK((tilde.mode_matrix(k) - A.mode_matrix(k)).norm() < 1e-14);

  const GraphBC bc = aps(splits);
  const GraphBC dagger = adjoint_condition(bc, sigma0, mode_split(tilde, K));
  for (int k = -K; k <= K; ++k) {
    const Matrix kernel = nullspace(A.mode_matrix(k));
    CHECK(kernel.cols() == 1);
    const Matrix dag = dagger.block(k).subspace_basis();
    // aps = adjoint-of-aps (+) kernel, and the sum is direct
    CHECK(intersect(dag, kernel).cols() == 0);
    CHECK(spans_equal(bc.block(k).subspace_basis(), hstack(dag, kernel), 1e-10));
  }
}

TEST_CASE("mode zero with a vanishing mode matrix absorbs the whole fiber") {
  BoundaryOperator1D A;
  A.a = Complex(0, -1) * pauli_z();
  A.b = Matrix::Zero(2, 2);
  const Matrix sigma0 = pauli_x();
  const int K = 1;

  const ModeSplits splits = mode_split(A, K);
  const GraphBC bc = aps(splits);
  const GraphBC dagger = adjoint_condition(bc, sigma0, mode_split(A.adjoint_adapted(sigma0), K));

  CHECK(bc.block(0).subspace_basis().cols() == 2);
  CHECK(dagger.block(0).subspace_basis().cols() == 0);
  CHECK(spans_equal(bc.block(0).subspace_basis(), nullspace(A.mode_matrix(0))));
  for (int k : {-1, 1})
    CHECK(spans_equal(dagger.block(k).subspace_basis(), bc.block(k).subspace_basis(), 1e-10));
}

TEST_CASE("adjoint condition validates its inputs") {
  Rng rng(408);
  BoundaryOperator1D A;
  A.a = random_matrix(2, 2, rng);
  A.b = random_matrix(2, 2, rng);
  const ModeSplits splits = mode_split(A, 1);
  const GraphBC bc = aps(splits);

  const ModeSplits wrong_range = mode_split(A, 2);
  CHECK_THROWS_AS(adjoint_condition(bc, Matrix::Identity(2, 2), wrong_range), ConfigError);
  CHECK_THROWS_AS(adjoint_condition(bc, Matrix::Zero(2, 2), splits), ConfigError);
  CHECK_THROWS_AS(adjoint_condition(bc, Matrix::Identity(3, 3), splits), ConfigError);
}

TEST_CASE("matching condition presents the diagonal over the doubled fiber") {
  const BoundaryOperator1D A_N = scalar_op(Complex(0, 1), Complex(0.3, 0));
  const int K = 2;
  const MatchingBC mbc = matching(A_N, K);
  CHECK(mbc.joint.K == K);
  CHECK(mbc.joint.total_wplus() == 0);
  CHECK(mbc.joint.total_wminus() == 0);
  CHECK(mbc.joint.max_graph_norm() == doctest::Approx(1.0));

  // joint operator A (+) (-A)
  BoundaryOperator1D joint;
  joint.a = Matrix::Zero(2, 2);
  joint.a.topLeftCorner(1, 1) = A_N.a;
  joint.a.bottomRightCorner(1, 1) = -A_N.a;
  joint.b = Matrix::Zero(2, 2);
  joint.b.topLeftCorner(1, 1) = A_N.b;
  joint.b.bottomRightCorner(1, 1) = -A_N.b;
  const ModeSplits jsplits = mode_split(joint, K);

  Matrix diag_pair(2, 1);
  diag_pair << 1, 1;
  for (int k = -K; k <= K; ++k) {
    CHECK_NOTHROW(mbc.joint.block(k).validate(jsplits.at(k)));
    CHECK(spans_equal(mbc.joint.block(k).subspace_basis(), diag_pair));
  }
}

TEST_CASE("matching on a matrix operator still spans the diagonal") {
  Rng rng(409);
  BoundaryOperator1D A_N;
  A_N.a = random_matrix(2, 2, rng);
  A_N.b = random_matrix(2, 2, rng) + 0.4 * Matrix::Identity(2, 2);
  const int K = 1;
  if (!is_invertible_bisectorial_proxy(A_N, K))
    A_N = A_N.shifted(shift_to_invertible(A_N, K));
  const MatchingBC mbc = matching(A_N, K);

  Matrix diag_pair(4, 2);
  diag_pair.setZero();
  diag_pair.topRows(2) = Matrix::Identity(2, 2);
  diag_pair.bottomRows(2) = Matrix::Identity(2, 2);
  for (int k = -K; k <= K; ++k)
    CHECK(spans_equal(mbc.joint.block(k).subspace_basis(), diag_pair));
}

TEST_CASE("matching refuses near-axis eigenvalues and names the remedy") {
  const BoundaryOperator1D A_N = scalar_op(Complex(0, 1), Complex(0, 0));
  try {
    matching(A_N, 2);
    FAIL("expected a ConfigError");
  } catch (const ConfigError& err) {
    CHECK(std::string(err.what()).find("shift_to_invertible") != std::string::npos);
  }
}

TEST_CASE("ls check accepts the mixing projector on the chiral model") {
  Matrix isz(2, 2);
  isz << Complex(0, 1), 0, 0, Complex(0, -1);
  auto A_sym = [isz](const RealVector& xi) { return Matrix(xi(0) * isz); };
  // adjoint adapted symbol with sigma0 = id
  auto A_star = [isz](const RealVector& xi) { return Matrix(xi(0) * isz.adjoint()); };

  PseudoLocalBC cond;
  cond.projector_symbol = [](const RealVector&) {
    Matrix p(2, 2);
    p << 0.5, 0.5, 0.5, 0.5;
    return p;
  };
  std::vector<RealVector> samples;
  for (Real s : {1.0, -1.0, 0.6, -0.6}) {
    RealVector xi(1);
    xi << s;
    samples.push_back(xi);
  }

  const LSResult res = ls_check(cond, A_sym, A_star, samples);
  CHECK(res.pass);
  CHECK(res.failures.empty());
}

TEST_CASE("ls check rejects a chirality-blind projector with a witness") {
  Matrix isz(2, 2);
  isz << Complex(0, 1), 0, 0, Complex(0, -1);
  auto A_sym = [isz](const RealVector& xi) { return Matrix(xi(0) * isz); };
  auto A_star = [isz](const RealVector& xi) { return Matrix(xi(0) * isz.adjoint()); };

  PseudoLocalBC cond;
  cond.projector_symbol = [](const RealVector&) {
    Matrix p = Matrix::Zero(2, 2);
    p(0, 0) = 1;
    return p;
  };
  std::vector<RealVector> samples;
  for (Real s : {1.0, -1.0}) {
    RealVector xi(1);
    xi << s;
    samples.push_back(xi);
  }

  const LSResult res = ls_check(cond, A_sym, A_star, samples);
  CHECK(!res.pass);
  REQUIRE(!res.failures.empty());
  for (const LSWitness& wit : res.failures) {
    CHECK(wit.dim_negative_space == 1);
    CHECK(wit.dim_range == 1);
    CHECK(wit.min_sv < 1e-9);
  }
}

TEST_CASE("ls check agrees with the eigenvector oracle on random pairs") {
  Rng rng(410);
  const Eigen::Index d = 4;
  std::vector<RealVector> samples;
  for (Real s : {1.0, -1.0, 0.4, -1.3}) {
    RealVector xi(1);
    xi << s;
    samples.push_back(xi);
  }

  int fail_seen = 0;
  for (int trial = 0; trial < 30; ++trial) {
    const Matrix S = random_matrix(d, d, rng);
    const Matrix Sstar = S.adjoint();
    const Matrix P = random_projector(d, rng.next_int(1, 3), rng);
    auto A_sym = [&S](const RealVector& xi) { return Matrix(xi(0) * S); };
    auto A_star = [&Sstar](const RealVector& xi) { return Matrix(xi(0) * Sstar); };

    PseudoLocalBC cond;
    cond.projector_symbol = [&P](const RealVector&) { return P; };
    const LSResult res = ls_check(cond, A_sym, A_star, samples);

    bool oracle_pass = true;
    const Complex iunit(0, 1);
    for (const RealVector& xi : samples) {
      const Matrix neg = eigen_minus_space(iunit * A_sym(xi), 1e-10);
      const Matrix neg_star = eigen_minus_space(iunit * A_star(xi), 1e-10);
      const Eigen::Index rank_p = numeric_rank(P);
      if (neg.cols() != rank_p || numeric_rank(P * neg) != rank_p) oracle_pass = false;
      if (neg_star.cols() != rank_p || numeric_rank(P.adjoint() * neg_star) != rank_p)
        oracle_pass = false;
    }
    CHECK(res.pass == oracle_pass);
    if (!oracle_pass) ++fail_seen;
  }
  // the sample set must exercise both verdicts
  CHECK(fail_seen > 0);
  CHECK(fail_seen < 30);
}

TEST_CASE("ls verdict is invariant under a consistent unitary change of frame") {
  Rng rng(411);
  const Eigen::Index d = 4;
  RealVector xi(1);
  xi << 1.0;
  std::vector<RealVector> samples = {xi, RealVector(-xi)};

  for (int trial = 0; trial < 5; ++trial) {
    const Matrix S = random_matrix(d, d, rng);
    const Matrix P = random_projector(d, 2, rng);
    const Matrix U = random_unitary(d, rng);

    auto make_cond = [](const Matrix& proj) {
      PseudoLocalBC cond;
      cond.projector_symbol = [proj](const RealVector&) { return proj; };
      return cond;
    };
    auto sym = [](const Matrix& m) {
      return [m](const RealVector& xi_in) { return Matrix(xi_in(0) * m); };
    };

    const LSResult base =
        ls_check(make_cond(P), sym(S), sym(Matrix(S.adjoint())), samples);
    const Matrix Sc = U * S * U.adjoint();
    const LSResult rotated = ls_check(make_cond(Matrix(U * P * U.adjoint())), sym(Sc),
                                      sym(Matrix(Sc.adjoint())), samples);
    CHECK(base.pass == rotated.pass);
    CHECK(base.failures.size() == rotated.failures.size());
  }
}

TEST_CASE("interchange check accepts the off-diagonal model and rejects the identity") {
  Matrix sx = pauli_x();
  auto A_sym = [sx](const RealVector& xi) { return Matrix(xi(0) * sx); };
  std::vector<RealVector> samples;
  for (Real s : {1.0, -0.7}) {
    RealVector xi(1);
    xi << s;
    samples.push_back(xi);
  }

  Matrix q = Matrix::Zero(2, 2);
  q(0, 0) = 1;
  CHECK(local_interchange_check(q, A_sym, samples));
  CHECK(local_interchange_check(Matrix(Matrix::Identity(2, 2) - q), A_sym, samples));
  CHECK(!local_interchange_check(Matrix::Identity(2, 2), A_sym, samples));

  Matrix skew(2, 2);
  skew << 1, 1, 0, 0;
  CHECK_THROWS_AS(local_interchange_check(skew, A_sym, samples), ConfigError);
}

TEST_CASE("forms model: the adapted symbol interchanges tangential and normal forms") {
  // complexified forms on a 2-manifold near the boundary, basis
  // {1, dt, dtheta, dt^dtheta}; sigma(xi) = xi wedge - xi contraction
  auto wedge = [](Real x1, Real x2) {
    Matrix w = Matrix::Zero(4, 4);
    w(1, 0) = x1;
    w(2, 0) = x2;
    w(3, 1) = -x2;
    w(3, 2) = x1;
    return w;
  };
  auto contraction = [](Real x1, Real x2) {
    Matrix c = Matrix::Zero(4, 4);
    c(0, 1) = x1;
    c(0, 2) = x2;
    c(1, 3) = -x2;
    c(2, 3) = x1;
    return c;
  };
  auto sigma = [&](Real x1, Real x2) { return Matrix(wedge(x1, x2) - contraction(x1, x2)); };

  const Matrix sigma0 = sigma(1, 0);
  // Dirac-type normalization of the full symbol
  CHECK((sigma0.adjoint() * sigma0 - Matrix::Identity(4, 4)).norm() < 1e-14);
  const Matrix sigma0_inv = sigma0.inverse();
  auto A_sym = [&](const RealVector& xi) { return Matrix(sigma0_inv * sigma(0, xi(0))); };

  std::vector<RealVector> samples;
  for (Real s : {1.0, -1.0, 0.35, -2.0}) {
    RealVector xi(1);
    xi << s;
    samples.push_back(xi);
  }

  // absolute condition: forms without dt; relative condition: dt wedge forms
  Matrix q_abs = Matrix::Zero(4, 4);
  q_abs(0, 0) = 1;
  q_abs(2, 2) = 1;
  const Matrix q_rel = Matrix::Identity(4, 4) - q_abs;
  CHECK(local_interchange_check(q_abs, A_sym, samples));
  CHECK(local_interchange_check(q_rel, A_sym, samples));
  CHECK(!local_interchange_check(Matrix(q_abs + q_rel), A_sym, samples));
}
