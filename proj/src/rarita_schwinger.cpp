#include "ebvp/rarita_schwinger.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>
#include <sstream>

#include "ebvp/subspace.hpp"

namespace ebvp {

namespace {

// id_{T*M} (x) sigma(xi): block diagonal with the covector index outermost
Matrix tensor_with_identity(const Matrix& block, int n) {
  const Eigen::Index m = block.rows();
  Matrix out = Matrix::Zero(n * m, n * m);
  for (int i = 0; i < n; ++i) out.block(i * m, i * m, m, m) = block;
  return out;
}

Matrix kernel_basis_from_projector(const Matrix& projector, Eigen::Index rank) {
  // Rank-revealing factorization with deterministic column pivoting; the
  // leading rank columns of Q span the range of the projector.
  Eigen::ColPivHouseholderQR<Matrix> qr(projector);
  Matrix q = qr.householderQ();
  return q.leftCols(rank);
}

}  // namespace

RSBundleData build_rs(const LinearSymbol& dirac, const Metric& metric) {
  dirac.validate();
  metric.validate();
  const int n = dirac.dimension();
  if (n < 3) throw ConfigError("build_rs: needs dimension >= 3");
  if (!dirac.square()) throw ConfigError("build_rs: needs a square Dirac-type symbol");
  if ((metric.g - RealMatrix::Identity(n, n)).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError(
        "build_rs: assumes an orthonormal frame (identity metric); "
        "pre-orthonormalize general metrics");
  if (!check_dirac_type(dirac, metric, 1e-9)) {
    // name the worst offending Clifford pair
    int bi = 0, bj = 0;
    Real worst = -1;
    const Matrix id = Matrix::Identity(dirac.rows(), dirac.rows());
    for (int i = 0; i < n; ++i) {
      for (int j = i; j < n; ++j) {
        const Matrix& si = dirac.coeffs[static_cast<size_t>(i)];
        const Matrix& sj = dirac.coeffs[static_cast<size_t>(j)];
        Real r = (si.adjoint() * sj + sj.adjoint() * si - 2.0 * metric.g(i, j) * id)
                     .cwiseAbs()
                     .maxCoeff();
        if (r > worst) {
          worst = r;
          bi = i;
          bj = j;
        }
      }
    }
    std::ostringstream msg;
    msg << "build_rs: seed is not Dirac-type; Clifford relation (" << bi << "," << bj
        << ") deviates by " << worst;
    throw ConfigError(msg.str());
  }

  RSBundleData data;
  data.n = n;
  data.m = static_cast<int>(dirac.rows());
  data.seed = dirac;
  const int m = data.m;

  data.gamma = Matrix::Zero(m, n * m);
  data.iota = Matrix::Zero(n * m, m);
  data.gamma_tilde = Matrix::Zero(m, n * m);
  data.iota_tilde = Matrix::Zero(n * m, m);
  for (int i = 0; i < n; ++i) {
    const Matrix& si = dirac.coeffs[static_cast<size_t>(i)];
    data.gamma.block(0, i * m, m, m) = si;
    data.iota.block(i * m, 0, m, m) = si.adjoint() / double(n);
    data.gamma_tilde.block(0, i * m, m, m) = si.adjoint();
    data.iota_tilde.block(i * m, 0, m, m) = si / double(n);
  }

  const Matrix id_nm = Matrix::Identity(n * m, n * m);
  data.P32 = id_nm - data.iota * data.gamma;
  data.P32_tilde = id_nm - data.iota_tilde * data.gamma_tilde;

  auto check = [](Real dev, const char* what) {
    if (dev > 1e-12) {
      std::ostringstream msg;
      msg << "build_rs: structural identity violated (" << what << ", deviation "
          << dev << ")";
      throw std::logic_error(msg.str());
    }
  };
  check((data.gamma * data.iota - Matrix::Identity(m, m)).cwiseAbs().maxCoeff(),
        "gamma iota = id");
  check((data.iota.adjoint() - data.gamma / double(n)).cwiseAbs().maxCoeff(),
        "iota^dag = gamma/n");
  check((data.P32 - data.P32.adjoint()).cwiseAbs().maxCoeff(), "P32 Hermitian");
  check((data.P32 * data.P32 - data.P32).cwiseAbs().maxCoeff(), "P32 idempotent");

  const Eigen::Index reduced = data.reduced_dim();
  data.basis32 = kernel_basis_from_projector(data.P32, reduced);
  data.basis32_tilde = kernel_basis_from_projector(data.P32_tilde, reduced);
  check((data.P32 * data.basis32 - data.basis32).cwiseAbs().maxCoeff(),
        "basis32 spans ran P32");
  check((data.P32_tilde * data.basis32_tilde - data.basis32_tilde)
            .cwiseAbs()
            .maxCoeff(),
        "basis32~ spans ran P32~");
  return data;
}

RSSymbolEvaluation rs_symbol(const RSBundleData& data, const RealVector& xi) {
  if (xi.size() != data.n) throw ConfigError("rs_symbol: covector dimension mismatch");
  RSSymbolEvaluation eval;
  eval.xi = xi;
  const Matrix big = tensor_with_identity(evaluate(data.seed, xi), data.n);
  eval.matrix = data.basis32_tilde.adjoint() * (data.P32_tilde * (big * data.basis32));
  Eigen::SelfAdjointEigenSolver<Matrix> es(eval.matrix.adjoint() * eval.matrix);
  eval.gram_eigs = es.eigenvalues();
  return eval;
}

LinearSymbol rs_linear_symbol(const RSBundleData& data) {
  LinearSymbol s;
  for (int i = 0; i < data.n; ++i) {
    RealVector e = RealVector::Zero(data.n);
    e(i) = 1;
    s.coeffs.push_back(rs_symbol(data, e).matrix);
  }
  return s;
}

std::pair<Matrix, Matrix> decompose_along_xi(const RSBundleData& data,
                                             const RealVector& xi) {
  if (xi.size() != data.n) throw ConfigError("decompose_along_xi: dimension mismatch");
  if (xi.norm() == 0)
    throw ConfigError("decompose_along_xi: undefined for the zero covector");
  const int n = data.n;
  const int m = data.m;

  // xi hook (e^i (x) v) = xi_i v
  Matrix contraction = Matrix::Zero(m, n * m);
  for (int i = 0; i < n; ++i)
    contraction.block(0, i * m, m, m) = xi(i) * Matrix::Identity(m, m);

  Matrix inside = nullspace(contraction * data.basis32);
  Matrix first = data.basis32 * inside;

  Matrix seeds = Matrix::Zero(n * m, m);
  for (int j = 0; j < m; ++j) {
    Vector v = Vector::Zero(n * m);
    for (int i = 0; i < n; ++i) v(i * m + j) = xi(i);
    seeds.col(j) = data.P32 * v;
  }
  Matrix second = orthonormal_basis(seeds);
  return {first, second};
}

}  // namespace ebvp
