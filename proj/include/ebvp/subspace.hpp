#pragma once

#include "ebvp/types.hpp"

namespace ebvp {

// Column-space utilities, all SVD-backed with tolerances relative to the
// largest singular value. A subspace is represented by a matrix whose columns
// span it; returned bases are orthonormal.

Matrix orthonormal_basis(const Matrix& columns, Real rel_tol = 1e-10);
Matrix nullspace(const Matrix& M, Real rel_tol = 1e-10);
Eigen::Index numeric_rank(const Matrix& M, Real rel_tol = 1e-10);

// Orthogonal complement of span(columns) in the ambient space.
Matrix orthogonal_complement(const Matrix& columns, Eigen::Index ambient_dim,
                             Real rel_tol = 1e-10);

// span(U) intersect span(V)
Matrix intersect(const Matrix& U, const Matrix& V, Real rel_tol = 1e-10);

// Orthogonal complement of span(W) inside span(U); W should be contained in U.
Matrix complement_within(const Matrix& U, const Matrix& W, Real rel_tol = 1e-10);

// Orthogonal projector onto span(columns).
Matrix projector_onto(const Matrix& columns, Real rel_tol = 1e-10);

// Operator-norm distance of the orthogonal projectors, a metric on subspaces.
Real subspace_distance(const Matrix& U, const Matrix& V, Real rel_tol = 1e-10);

bool spans_equal(const Matrix& U, const Matrix& V, Real tol = 1e-9);

}  // namespace ebvp
