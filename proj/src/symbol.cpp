#include "ebvp/symbol.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <cmath>
#include <sstream>

#include "ebvp/sampling.hpp"

namespace ebvp {

Metric Metric::identity(int n) { return Metric{RealMatrix::Identity(n, n)}; }

Real Metric::covector_norm(const RealVector& xi) const {
  if (xi.size() != g.rows()) throw ConfigError("metric: covector dimension mismatch");
  return std::sqrt(xi.dot(g * xi));
}

RealMatrix Metric::inverse_sqrt() const {
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  return es.operatorInverseSqrt();
}

void Metric::validate() const {
  if (g.rows() < 1 || g.rows() != g.cols())
    throw ConfigError("metric: expected a square matrix of dimension >= 1");
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12)
    throw ConfigError("metric: not symmetric to 1e-12");
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(g);
  if (es.eigenvalues().minCoeff() <= 0)
    throw ConfigError("metric: not positive definite");
}

void LinearSymbol::validate() const {
  if (coeffs.empty())
    throw ConfigError("symbol: needs at least 1 coefficient matrix");
  for (const auto& c : coeffs) {
    if (c.rows() != rows() || c.cols() != cols())
      throw ConfigError("symbol: coefficient matrices must share one shape");
    if (c.rows() == 0 || c.cols() == 0)
      throw ConfigError("symbol: empty coefficient matrix");
  }
}

Real LinearSymbol::scale() const {
  Real s = 0;
  for (const auto& c : coeffs)
    s = std::max(s, c.jacobiSvd().singularValues()(0));
  return s;
}

Matrix evaluate(const LinearSymbol& s, const RealVector& xi) {
  s.validate();
  if (xi.size() != s.dimension())
    throw ConfigError("symbol: covector has wrong dimension");
  Matrix out = Matrix::Zero(s.rows(), s.cols());
  for (int i = 0; i < s.dimension(); ++i)
    out += xi(i) * s.coeffs[static_cast<size_t>(i)];
  return out;
}

Real clifford_residual(const LinearSymbol& s, const Metric& metric) {
  s.validate();
  metric.validate();
  if (!s.square()) throw ConfigError("symbol: Clifford check needs a square symbol");
  if (s.dimension() != metric.dimension())
    throw ConfigError("symbol: metric dimension mismatch");
  const Matrix id = Matrix::Identity(s.rows(), s.rows());
  Real worst = 0;
  for (int i = 0; i < s.dimension(); ++i) {
    for (int j = i; j < s.dimension(); ++j) {
      const Matrix& si = s.coeffs[static_cast<size_t>(i)];
      const Matrix& sj = s.coeffs[static_cast<size_t>(j)];
      Matrix rel = si.adjoint() * sj + sj.adjoint() * si - 2.0 * metric.g(i, j) * id;
      worst = std::max(worst, rel.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

bool check_dirac_type(const LinearSymbol& s, const Metric& metric, Real tol) {
  if (!s.square()) return false;
  Real scale = std::max(1.0, s.scale());
  return clifford_residual(s, metric) <= tol * scale * scale;
}

namespace {

Real smallest_sv(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(svd.singularValues().size() - 1);
}

Real largest_sv(const Matrix& m) { return m.jacobiSvd().singularValues()(0); }

}  // namespace

SymbolReport check_ellipticity(const LinearSymbol& s, const Metric& metric,
                               int sphere_samples, Real tol) {
  s.validate();
  metric.validate();
  if (sphere_samples <= 0)
    throw ConfigError("check_ellipticity: sphere_samples must be positive");
  if (s.dimension() != metric.dimension())
    throw ConfigError("check_ellipticity: metric dimension mismatch");

  SymbolReport report;
  report.square = s.square();
  const int n = s.dimension();
  const RealMatrix to_g_sphere = metric.inverse_sqrt();

  auto min_sv_at = [&](const RealVector& u) {
    return smallest_sv(evaluate(s, to_g_sphere * u));
  };
  auto max_sv_at = [&](const RealVector& u) {
    return largest_sv(evaluate(s, to_g_sphere * u));
  };

  SphereExtremum lo = minimize_over_sphere(n, sphere_samples, min_sv_at);
  SphereExtremum hi = maximize_over_sphere(n, sphere_samples, max_sv_at);

  report.min_sv = lo.value;
  report.witness_xi = to_g_sphere * lo.xi;
  report.norm_bound_C = hi.value;
  report.elliptic = report.square && report.min_sv > tol * std::max(1.0, s.scale());
  if (report.square) {
    report.clifford_residual = clifford_residual(s, metric);
    report.dirac_type = check_dirac_type(s, metric, tol);
  }
  return report;
}

Real operator_norm_bound(const LinearSymbol& s, const Metric& metric,
                         int sphere_samples) {
  s.validate();
  metric.validate();
  if (sphere_samples <= 0)
    throw ConfigError("operator_norm_bound: sphere_samples must be positive");
  const RealMatrix to_g_sphere = metric.inverse_sqrt();
  SphereExtremum hi = maximize_over_sphere(
      s.dimension(), sphere_samples,
      [&](const RealVector& u) { return largest_sv(evaluate(s, to_g_sphere * u)); });
  return hi.value;
}

std::vector<Matrix> clifford_generators(int n) {
  if (n < 2) throw ConfigError("clifford_generators: dimension must be >= 2");
  Matrix sx(2, 2), sy(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;

  // rank schedule 2^ceil(n/2): grow only by doubling (k generators of rank R
  // become k+2 of rank 2R), then truncate to n
  std::vector<Matrix> gens = {sx, sy};
  while (static_cast<int>(gens.size()) < n) {
    std::vector<Matrix> lifted;
    for (const auto& gmat : gens) {
      Matrix lift = Matrix::Zero(2 * gmat.rows(), 2 * gmat.cols());
      lift.topRightCorner(gmat.rows(), gmat.cols()) = gmat;
      lift.bottomLeftCorner(gmat.rows(), gmat.cols()) = gmat;
      lifted.push_back(lift);
    }
    const Eigen::Index half = gens.front().rows();
    Matrix gy = Matrix::Zero(2 * half, 2 * half);
    gy.topRightCorner(half, half) = Complex(0, -1) * Matrix::Identity(half, half);
    gy.bottomLeftCorner(half, half) = Complex(0, 1) * Matrix::Identity(half, half);
    Matrix gz = Matrix::Zero(2 * half, 2 * half);
    gz.topLeftCorner(half, half) = Matrix::Identity(half, half);
    gz.bottomRightCorner(half, half) = -Matrix::Identity(half, half);
    lifted.push_back(gy);
    lifted.push_back(gz);
    gens = std::move(lifted);
  }
  gens.resize(static_cast<size_t>(n));
  return gens;
}

LinearSymbol dirac_symbol(int n) { return LinearSymbol{clifford_generators(n)}; }

LinearSymbol dirac_symbol(const Metric& metric) {
  metric.validate();
  const int n = metric.dimension();
  auto gens = clifford_generators(n);
  Eigen::SelfAdjointEigenSolver<RealMatrix> es(metric.g);
  RealMatrix root = es.operatorSqrt();
  LinearSymbol s;
  for (int i = 0; i < n; ++i) {
    Matrix c = Matrix::Zero(gens.front().rows(), gens.front().cols());
    for (int j = 0; j < n; ++j) c += root(i, j) * gens[static_cast<size_t>(j)];
    s.coeffs.push_back(c);
  }
  return s;
}

namespace {

// sign of moving e_i past the elements of S below i
int wedge_sign(unsigned subset, int i) {
  int crossings = 0;
  for (int j = 0; j < i; ++j)
    if (subset & (1u << j)) ++crossings;
  return crossings % 2 == 0 ? 1 : -1;
}

}  // namespace

LinearSymbol forms_symbol(int n) {
  if (n < 2) throw ConfigError("forms_symbol: dimension must be >= 2");
  if (n > 12) throw ConfigError("forms_symbol: dimension too large for a dense bundle");
  const Eigen::Index dim = Eigen::Index(1) << n;
  LinearSymbol s;
  for (int i = 0; i < n; ++i) {
    Matrix c = Matrix::Zero(dim, dim);
    for (unsigned subset = 0; subset < (1u << n); ++subset) {
      const unsigned bit = 1u << i;
      if (!(subset & bit)) {
        c(static_cast<Eigen::Index>(subset | bit), static_cast<Eigen::Index>(subset)) +=
            wedge_sign(subset, i);
      } else {
        c(static_cast<Eigen::Index>(subset & ~bit), static_cast<Eigen::Index>(subset)) +=
            wedge_sign(subset & ~bit, i);
      }
    }
    s.coeffs.push_back(c);
  }
  return s;
}

Matrix forms_normal_projector(int n) {
  const Eigen::Index dim = Eigen::Index(1) << n;
  Matrix q = Matrix::Zero(dim, dim);
  for (unsigned subset = 0; subset < (1u << n); ++subset)
    if (subset & 1u) q(static_cast<Eigen::Index>(subset), static_cast<Eigen::Index>(subset)) = 1;
  return q;
}

}  // namespace ebvp
