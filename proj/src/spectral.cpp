#include "ebvp/spectral.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "ebvp/subspace.hpp"

namespace ebvp {

namespace {

// Unitarily swap the adjacent Schur eigenvalues at positions i, i+1.
// The first column of the rotation is the unit eigenvector of the 2x2 block
// for its trailing eigenvalue, which therefore moves to the front.
void swap_adjacent(Matrix& T, Matrix& U, Eigen::Index i) {
  const Complex a = T(i, i);
  const Complex b = T(i, i + 1);
  const Complex c = T(i + 1, i + 1);
  const Real scale = std::abs(a) + std::abs(b) + std::abs(c) + 1.0;
  Complex x0 = b;
  Complex x1 = c - a;
  const Real nrm = std::sqrt(std::norm(x0) + std::norm(x1));
  if (nrm > 1e-15 * scale) {
    x0 /= nrm;
    x1 /= nrm;
    Matrix q(2, 2);
    q << x0, -std::conj(x1), x1, std::conj(x0);
    T.middleCols(i, 2) = T.middleCols(i, 2) * q;
    T.middleRows(i, 2) = q.adjoint() * T.middleRows(i, 2);
    U.middleCols(i, 2) = U.middleCols(i, 2) * q;
  } else {
    // eigenvalues coincide to working precision; ordering is immaterial
    std::swap(T(i, i), T(i + 1, i + 1));
  }
  T(i + 1, i) = Complex(0, 0);
}

}  // namespace

SpectralSplit spectral_projectors(const Matrix& M, Real realpart_tol) {
  if (M.rows() != M.cols())
    throw ConfigError("spectral_projectors: matrix must be square");
  const Eigen::Index n = M.rows();
  SpectralSplit split;
  if (n == 0) {
    split.chi_plus = split.chi_minus = split.schur_U = Matrix(0, 0);
    split.coupling_X = Matrix(0, 0);
    return split;
  }

  Eigen::ComplexSchur<Matrix> schur(M, true);
  if (schur.info() != Eigen::Success)
    throw std::runtime_error("spectral_projectors: Schur decomposition failed");
  Matrix T = schur.matrixT();
  Matrix U = schur.matrixU();

  auto is_plus = [&](const Complex& lambda) { return lambda.real() > realpart_tol; };
  for (Eigen::Index i = 0; i < n; ++i) {
    const Real re = T(i, i).real();
    if (re > 0 && re <= realpart_tol) {
      split.ambiguous = true;
      split.flagged.push_back(T(i, i));
    }
  }

  // stable bubble pass moving the plus cluster to the leading positions
  for (Eigen::Index pass = 0; pass < n; ++pass) {
    bool moved = false;
    for (Eigen::Index i = 0; i + 1 < n; ++i) {
      if (!is_plus(T(i, i)) && is_plus(T(i + 1, i + 1))) {
        swap_adjacent(T, U, i);
        moved = true;
      }
    }
    if (!moved) break;
  }

  Eigen::Index p = 0;
  while (p < n && is_plus(T(p, p))) ++p;
  split.n_plus = p;
  const Eigen::Index q = n - p;

  // T11 X - X T22 = T12, solved column by column; the shifted diagonal blocks
  // are invertible because the two spectra are separated by the tolerance line
  Matrix X(p, q);
  if (p > 0 && q > 0) {
    const auto T11 = T.topLeftCorner(p, p);
    const auto T22 = T.bottomRightCorner(q, q);
    const auto T12 = T.topRightCorner(p, q);
    for (Eigen::Index j = 0; j < q; ++j) {
      Vector rhs = T12.col(j);
      for (Eigen::Index k = 0; k < j; ++k) rhs += X.col(k) * T22(k, j);
      Matrix shifted = T11 - T22(j, j) * Matrix::Identity(p, p);
      X.col(j) = shifted.triangularView<Eigen::Upper>().solve(rhs);
    }
  }

  Matrix P = Matrix::Zero(n, n);
  P.topLeftCorner(p, p) = Matrix::Identity(p, p);
  P.topRightCorner(p, q) = X;
  split.chi_plus = U * P * U.adjoint();
  split.chi_minus = Matrix::Identity(n, n) - split.chi_plus;
  split.schur_U = U;
  split.coupling_X = X;

  // cluster the diagonal into reported eigenvalues
  std::vector<Complex> eigs(static_cast<size_t>(n));
  for (Eigen::Index i = 0; i < n; ++i) eigs[static_cast<size_t>(i)] = T(i, i);
  Real scale = 0;
  for (const Complex& l : eigs) scale = std::max(scale, std::abs(l));
  const Real cluster_tol = 1e-8 * std::max(Real(1), scale);
  std::sort(eigs.begin(), eigs.end(), [](const Complex& l, const Complex& r) {
    if (l.real() != r.real()) return l.real() > r.real();
    return l.imag() < r.imag();
  });
  size_t i = 0;
  while (i < eigs.size()) {
    size_t j = i + 1;
    Complex sum = eigs[i];
    while (j < eigs.size() && std::abs(eigs[j] - eigs[j - 1]) <= cluster_tol) {
      sum += eigs[j];
      ++j;
    }
    SpectralEigenvalue entry;
    entry.value = sum / Complex(double(j - i), 0);
    entry.multiplicity = static_cast<int>(j - i);
    entry.side = is_plus(entry.value) ? '+' : '-';
    split.spectrum.push_back(entry);
    i = j;
  }
  return split;
}

Matrix chi_plus_range(const SpectralSplit& split) {
  return split.schur_U.leftCols(split.n_plus);
}

Matrix chi_minus_range(const SpectralSplit& split) {
  const Eigen::Index p = split.n_plus;
  const Eigen::Index q = split.dim() - p;
  Matrix cols(split.dim(), q);
  cols.topRows(p) = -split.coupling_X;
  cols.bottomRows(q) = Matrix::Identity(q, q);
  return orthonormal_basis(split.schur_U * cols);
}

}  // namespace ebvp
