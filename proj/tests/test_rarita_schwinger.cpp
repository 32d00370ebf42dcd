#include <doctest.h>

#include <cmath>

#include "ebvp/rarita_schwinger.hpp"
#include "ebvp/sampling.hpp"
#include "ebvp/subspace.hpp"
#include "oracles.hpp"

using namespace ebvp;

namespace {

// Dense basis-free oracle for the reduced symbol: build P32_tilde * (id (x)
// sigma(xi)) on the full n*m space, restrict to ker(gamma) via projectors, and
// read the nonzero singular values. Independent of the basis choice.
RealVector oracle_singular_values(const RSBundleData& rs, const RealVector& xi) {
  const Eigen::Index nm = rs.gamma.cols();
  Matrix big = Matrix::Zero(nm, nm);
  const Matrix sigma = evaluate(rs.seed, xi);
  const Eigen::Index m = rs.m;
  for (int i = 0; i < rs.n; ++i)
    big.block(i * m, i * m, m, m) = sigma;
  const Matrix composed = rs.P32_tilde * big * rs.P32;
  Eigen::JacobiSVD<Matrix> svd(composed);
  return svd.singularValues().head(rs.reduced_dim());
}

}  // namespace

TEST_CASE("rank of the three halves projector matches the reduced dimension") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  CHECK(rs.m == 4);
  CHECK(numeric_rank(rs.P32) == (3 - 1) * 4);
  CHECK(rs.basis32.cols() == (3 - 1) * 4);
  const RSBundleData rs2 = build_rs(dirac_symbol(4), Metric::identity(4));
  CHECK(numeric_rank(rs2.P32) == (4 - 1) * 4);
}

TEST_CASE("structural identities hold to machine precision") {
  for (int n : {3, 4, 5}) {
    const RSBundleData rs = build_rs(dirac_symbol(n), Metric::identity(n));
    const Eigen::Index m = rs.m;
    CHECK((rs.gamma * rs.iota - Matrix::Identity(m, m)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK((rs.iota.adjoint() - rs.gamma / Real(n)).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rs.P32 - rs.P32.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rs.P32 * rs.P32 - rs.P32).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rs.gamma_tilde * rs.iota_tilde - Matrix::Identity(m, m))
              .cwiseAbs()
              .maxCoeff() < 1e-12);
    // P32 projects onto ker(gamma)
    CHECK((rs.gamma * rs.P32).cwiseAbs().maxCoeff() < 1e-12);
    CHECK((rs.gamma_tilde * rs.P32_tilde).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("gram eigenvalues carry the two-level structure in dimension three") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  RealVector xi(3);
  xi << 1, 0, 0;
  const RSSymbolEvaluation eval = rs_symbol(rs, xi);
  REQUIRE(eval.gram_eigs.size() == 8);
  // ascending: m = 4 copies of (1/3)^2 then (n-2)m = 4 copies of 1
  for (int i = 0; i < 4; ++i)
    CHECK(eval.gram_eigs(i) == doctest::Approx(1.0 / 9.0).epsilon(1e-10));
  for (int i = 4; i < 8; ++i)
    CHECK(eval.gram_eigs(i) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("gram eigenvalues scale with the covector length in dimension four") {
  const RSBundleData rs = build_rs(dirac_symbol(4), Metric::identity(4));
  RealVector xi(4);
  xi << 0, 2, 0, 0;  // |xi| = 2
  const RSSymbolEvaluation eval = rs_symbol(rs, xi);
  REQUIRE(eval.gram_eigs.size() == 12);
  // values |xi|^2 = 4 and ((n-2)/n)^2 |xi|^2 = 1, multiplicities 8 and 4
  for (int i = 0; i < 4; ++i)
    CHECK(eval.gram_eigs(i) == doctest::Approx(1.0).epsilon(1e-9));
  for (int i = 4; i < 12; ++i)
    CHECK(eval.gram_eigs(i) == doctest::Approx(4.0).epsilon(1e-9));
}

TEST_CASE("reduced symbol matches the basis-free dense oracle") {
  for (int n : {3, 4}) {
    const RSBundleData rs = build_rs(dirac_symbol(n), Metric::identity(n));
    for (const RealVector& xi : unit_sphere_samples(n, 8)) {
      const RSSymbolEvaluation eval = rs_symbol(rs, xi);
      Eigen::JacobiSVD<Matrix> svd(eval.matrix);
      const RealVector direct = svd.singularValues();
      const RealVector oracle = oracle_singular_values(rs, xi);
      REQUIRE(direct.size() == oracle.size());
      for (Eigen::Index i = 0; i < direct.size(); ++i)
        CHECK(direct(i) == doctest::Approx(oracle(i)).epsilon(1e-9));
    }
  }
}

TEST_CASE("zero covector evaluates to the zero matrix") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  const RSSymbolEvaluation eval = rs_symbol(rs, RealVector(RealVector::Zero(3)));
  CHECK(eval.matrix.norm() == 0.0);
}

TEST_CASE("reduced symbol lands inside the tilde kernel") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  RealVector xi(3);
  xi << 0.3, -0.5, 0.81;
  const Eigen::Index m = rs.m;
  Matrix big = Matrix::Zero(rs.gamma.cols(), rs.gamma.cols());
  const Matrix sigma = evaluate(rs.seed, xi);
  for (int i = 0; i < rs.n; ++i) big.block(i * m, i * m, m, m) = sigma;
  const Matrix image = rs.P32_tilde * (big * rs.basis32);
  CHECK((rs.gamma_tilde * image).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("decomposition along a covector splits the reduced space") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  RealVector xi(3);
  xi << 0.6, 0.0, -0.8;
  const auto [first, second] = decompose_along_xi(rs, xi);
  // dimensions (n-2)m and m
  CHECK(first.cols() == (3 - 2) * 4);
  CHECK(second.cols() == 4);
  // mutually orthogonal and together spanning ker(gamma)
  CHECK((first.adjoint() * second).cwiseAbs().maxCoeff() < 1e-10);
  Matrix joined(first.rows(), first.cols() + second.cols());
  joined.leftCols(first.cols()) = first;
  joined.rightCols(second.cols()) = second;
  CHECK(spans_equal(joined, rs.basis32));
  // xi-contraction annihilates the first block exactly
  const Eigen::Index m = rs.m;
  Matrix contraction = Matrix::Zero(m, 3 * m);
  for (int i = 0; i < 3; ++i)
    contraction.block(0, i * m, m, m) = xi(i) * Matrix::Identity(m, m);
  CHECK((contraction * first).cwiseAbs().maxCoeff() < 1e-12);

  // the two blocks diagonalize sigma* sigma with the two known eigenvalues
  Matrix big = Matrix::Zero(3 * m, 3 * m);
  const Matrix sigma = evaluate(rs.seed, xi);
  for (int i = 0; i < 3; ++i) big.block(i * m, i * m, m, m) = sigma;
  const Matrix reduced = rs.P32_tilde * big * rs.P32;
  const Matrix gram = reduced.adjoint() * reduced;
  const Real norm2 = xi.squaredNorm();
  CHECK((gram * first - norm2 * first).cwiseAbs().maxCoeff() < 1e-10);
  const Real small = std::pow((3.0 - 2.0) / 3.0, 2) * norm2;
  CHECK((gram * second - small * second).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("construction rejects low dimensions and non dirac seeds") {
  CHECK_THROWS_AS(build_rs(dirac_symbol(2), Metric::identity(2)), ConfigError);
  LinearSymbol bad;
  bad.coeffs = {Matrix::Identity(2, 2), Matrix::Identity(2, 2),
                Matrix::Identity(2, 2)};
  CHECK_THROWS_AS(build_rs(bad, Metric::identity(3)), ConfigError);
  CHECK_THROWS_AS(decompose_along_xi(build_rs(dirac_symbol(3), Metric::identity(3)),
                                     RealVector(RealVector::Zero(3))),
                  ConfigError);
}

TEST_CASE("reduced linear symbol reproduces pointwise evaluations") {
  const RSBundleData rs = build_rs(dirac_symbol(3), Metric::identity(3));
  const LinearSymbol reduced = rs_linear_symbol(rs);
  CHECK(reduced.dimension() == 3);
  CHECK(reduced.rows() == rs.reduced_dim());
  RealVector xi(3);
  xi << 0.2, 1.4, -0.7;
  CHECK((evaluate(reduced, xi) - rs_symbol(rs, xi).matrix).norm() < 1e-10);
}
