#include "ebvp/subspace.hpp"

#include <Eigen/SVD>

namespace ebvp {

namespace {

Eigen::Index rank_from_svs(const RealVector& sv, Real rel_tol) {
  if (sv.size() == 0) return 0;
  const Real cutoff = rel_tol * sv(0);
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > cutoff && sv(r) > 0) ++r;
  return r;
}

}  // namespace

Matrix orthonormal_basis(const Matrix& columns, Real rel_tol) {
  if (columns.cols() == 0) return Matrix(columns.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(columns, Eigen::ComputeThinU);
  const Eigen::Index r = rank_from_svs(svd.singularValues(), rel_tol);
  return svd.matrixU().leftCols(r);
}

Matrix nullspace(const Matrix& M, Real rel_tol) {
  if (M.cols() == 0) return Matrix(0, 0);
  if (M.rows() == 0) return Matrix::Identity(M.cols(), M.cols());
  Eigen::JacobiSVD<Matrix> svd(M, Eigen::ComputeFullV);
  const Eigen::Index r = rank_from_svs(svd.singularValues(), rel_tol);
  return svd.matrixV().rightCols(M.cols() - r);
}

Eigen::Index numeric_rank(const Matrix& M, Real rel_tol) {
  if (M.rows() == 0 || M.cols() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(M);
  return rank_from_svs(svd.singularValues(), rel_tol);
}

Matrix orthogonal_complement(const Matrix& columns, Eigen::Index ambient_dim,
                             Real rel_tol) {
  if (columns.cols() == 0) return Matrix::Identity(ambient_dim, ambient_dim);
  if (columns.rows() != ambient_dim)
    throw ConfigError("orthogonal_complement: ambient dimension mismatch");
  return nullspace(columns.adjoint(), rel_tol);
}

Matrix intersect(const Matrix& U, const Matrix& V, Real rel_tol) {
  if (U.rows() != V.rows())
    throw ConfigError("intersect: ambient dimension mismatch");
  const Matrix bu = orthonormal_basis(U, rel_tol);
  const Matrix bv = orthonormal_basis(V, rel_tol);
  if (bu.cols() == 0 || bv.cols() == 0) return Matrix(U.rows(), 0);
  // x in both spans iff x = bu a = bv b, i.e. [bu -bv][a;b] = 0
  Matrix stacked(U.rows(), bu.cols() + bv.cols());
  stacked << bu, -bv;
  const Matrix null = nullspace(stacked, rel_tol);
  Matrix inside = bu * null.topRows(bu.cols());
  return orthonormal_basis(inside, rel_tol);
}

Matrix complement_within(const Matrix& U, const Matrix& W, Real rel_tol) {
  const Matrix bu = orthonormal_basis(U, rel_tol);
  const Matrix bw = orthonormal_basis(W, rel_tol);
  if (bw.cols() == 0) return bu;
  // project W out of each basis vector of U, then re-orthonormalize; the
  // inputs are unit columns, so singular values below rel_tol are projection
  // residue rather than directions and the cutoff must be absolute
  const Matrix reduced = bu - bw * (bw.adjoint() * bu);
  if (reduced.cols() == 0) return Matrix(U.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(reduced, Eigen::ComputeThinU);
  const RealVector& sv = svd.singularValues();
  Eigen::Index r = 0;
  while (r < sv.size() && sv(r) > rel_tol) ++r;
  return svd.matrixU().leftCols(r);
}

Matrix projector_onto(const Matrix& columns, Real rel_tol) {
  const Matrix b = orthonormal_basis(columns, rel_tol);
  if (b.cols() == 0) return Matrix::Zero(columns.rows(), columns.rows());
  return b * b.adjoint();
}

Real subspace_distance(const Matrix& U, const Matrix& V, Real rel_tol) {
  if (U.rows() != V.rows())
    throw ConfigError("subspace_distance: ambient dimension mismatch");
  const Matrix diff = projector_onto(U, rel_tol) - projector_onto(V, rel_tol);
  if (diff.rows() == 0) return 0;
  Eigen::JacobiSVD<Matrix> svd(diff);
  return svd.singularValues()(0);
}

bool spans_equal(const Matrix& U, const Matrix& V, Real tol) {
  return subspace_distance(U, V) <= tol;
}

}  // namespace ebvp
