#include <doctest.h>

#include "ebvp/subspace.hpp"
#include "oracles.hpp"

using namespace ebvp;
using ebvp::testing::Rng;
using ebvp::testing::random_matrix;
using ebvp::testing::random_unitary;

TEST_CASE("orthonormal basis spans the input columns") {
  Rng rng(11);
  const Matrix cols = random_matrix(6, 3, rng);
  Matrix padded(6, 5);
  padded.leftCols(3) = cols;
  padded.col(3) = cols.col(0) * Complex(2, 1);  // dependent
  padded.col(4) = cols.col(1) - cols.col(2);
  const Matrix basis = orthonormal_basis(padded);
  REQUIRE(basis.cols() == 3);
  CHECK((basis.adjoint() * basis - Matrix::Identity(3, 3)).norm() < 1e-12);
  CHECK(spans_equal(basis, cols));
}

TEST_CASE("nullspace and rank are consistent") {
  Rng rng(12);
  const Matrix a = random_matrix(5, 3, rng);
  const Matrix b = random_matrix(3, 4, rng);  // product has rank <= 3
  const Matrix m = a * b;
  CHECK(numeric_rank(m) == 3);
  const Matrix null = nullspace(m);
  REQUIRE(null.cols() == 1);
  CHECK((m * null).norm() < 1e-10);
}

TEST_CASE("nullspace of a zero-row matrix is everything") {
  const Matrix empty(0, 4);
  const Matrix null = nullspace(empty);
  CHECK(null.cols() == 4);
}

TEST_CASE("orthogonal complement splits the ambient space") {
  Rng rng(13);
  const Matrix u = random_unitary(6, rng).leftCols(2);
  const Matrix comp = orthogonal_complement(u, 6);
  REQUIRE(comp.cols() == 4);
  CHECK((u.adjoint() * comp).norm() < 1e-12);
  const Matrix empty(6, 0);
  CHECK(orthogonal_complement(empty, 6).cols() == 6);
}

TEST_CASE("intersection of two generic planes in four dimensions") {
  Rng rng(14);
  const Matrix q = random_unitary(4, rng);
  // share exactly the first column
  Matrix u(4, 2), v(4, 2);
  u << q.col(0), q.col(1);
  v << q.col(0), q.col(2);
  const Matrix both = intersect(u, v);
  REQUIRE(both.cols() == 1);
  CHECK(subspace_distance(both, Matrix(q.col(0))) < 1e-10);
  // disjoint case
  Matrix w(4, 1);
  w << q.col(3);
  CHECK(intersect(u, w).cols() == 0);
}

TEST_CASE("complement within a subspace") {
  Rng rng(15);
  const Matrix q = random_unitary(5, rng);
  const Matrix u = q.leftCols(3);
  const Matrix w = q.leftCols(1);
  const Matrix rest = complement_within(u, w);
  REQUIRE(rest.cols() == 2);
  CHECK((w.adjoint() * rest).norm() < 1e-12);
  Matrix joined(5, 3);
  joined.leftCols(1) = w;
  joined.rightCols(2) = rest;
  CHECK(spans_equal(u, joined));
}

TEST_CASE("projector onto a span is idempotent hermitian and correct") {
  Rng rng(16);
  const Matrix cols = random_matrix(5, 2, rng);
  const Matrix p = projector_onto(cols);
  CHECK((p * p - p).norm() < 1e-12);
  CHECK((p - p.adjoint()).norm() < 1e-12);
  CHECK((p * cols - cols).norm() < 1e-10);
  CHECK(numeric_rank(p) == 2);
}

TEST_CASE("subspace distance separates different spans and vanishes on equal ones") {
  Rng rng(17);
  const Matrix q = random_unitary(4, rng);
  const Matrix u = q.leftCols(2);
  Matrix mixed(4, 2);
  // same span in a different basis
  mixed.col(0) = (u.col(0) + u.col(1)) / std::sqrt(2.0);
  mixed.col(1) = (u.col(0) - u.col(1)) / std::sqrt(2.0);
  CHECK(subspace_distance(u, mixed) < 1e-12);
  CHECK(spans_equal(u, mixed));
  const Matrix v = q.rightCols(2);
  CHECK(subspace_distance(u, v) == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(!spans_equal(u, v));
}
