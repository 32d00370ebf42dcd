#include "ebvp/sampling.hpp"

#include <atomic>
#include <cmath>
#include <thread>
#include <vector>

#include "ebvp/parallel.hpp"

namespace ebvp {

namespace {

std::atomic<int> g_thread_budget{0};

// Acklam's rational approximation of the inverse normal CDF; relative error
// ~1e-9, far below the grid resolution it feeds.
double inverse_normal_cdf(double p) {
  static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                             -2.759285104469687e+02, 1.383577518672690e+02,
                             -3.066479806614716e+01, 2.506628277459239e+00};
  static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                             -1.556989798598866e+02, 6.680131188771972e+01,
                             -1.328068155288572e+01};
  static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                             -2.400758277161838e+00, -2.549732539343734e+00,
                             4.374664141464968e+00,  2.938163982698783e+00};
  static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                             2.445134137142996e+00, 3.754408661907416e+00};
  const double plow = 0.02425;
  if (p < plow) {
    double q = std::sqrt(-2 * std::log(p));
    return (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  if (p > 1 - plow) {
    double q = std::sqrt(-2 * std::log(1 - p));
    return -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
           ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1);
  }
  double q = p - 0.5;
  double r = q * q;
  return (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
         (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1);
}

// Kronecker sequence step sizes 1/phi_d, 1/phi_d^2, ... where phi_d solves
// x^(d+1) = x + 1; equidistributed in the unit cube.
std::vector<double> kronecker_alphas(int d) {
  double phi = 2.0;
  for (int it = 0; it < 64; ++it) phi = std::pow(1 + phi, 1.0 / (d + 1));
  std::vector<double> alpha(static_cast<size_t>(d));
  double f = 1.0;
  for (int i = 0; i < d; ++i) {
    f /= phi;
    alpha[static_cast<size_t>(i)] = f;
  }
  return alpha;
}

RealVector normalize_or_pole(RealVector v) {
  double norm = v.norm();
  if (norm < 1e-12) {
    v.setZero();
    v(0) = 1;
    return v;
  }
  return v / norm;
}

}  // namespace

void set_thread_budget(int threads) { g_thread_budget.store(threads); }

int thread_budget() {
  int t = g_thread_budget.load();
  if (t > 0) return t;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn) {
  int workers = thread_budget();
  if (workers <= 1 || count < 2) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  auto drain = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count) break;
      fn(i);
    }
  };
  std::vector<std::thread> pool;
  int spawn = std::min<int>(workers, static_cast<int>(count));
  pool.reserve(static_cast<size_t>(spawn - 1));
  for (int w = 1; w < spawn; ++w) pool.emplace_back(drain);
  drain();
  for (auto& th : pool) th.join();
}

std::vector<RealVector> unit_sphere_samples(int n, int count) {
  if (n < 1) throw ConfigError("sphere sampling: dimension must be >= 1");
  if (count < 1) throw ConfigError("sphere sampling: sample count must be >= 1");
  std::vector<RealVector> out;
  out.reserve(static_cast<size_t>(count));
  if (n == 1) {
    out.emplace_back(RealVector::Constant(1, 1.0));
    if (count > 1) out.emplace_back(RealVector::Constant(1, -1.0));
    return out;
  }
  if (n == 2) {
    for (int j = 0; j < count; ++j) {
      double theta = 2 * M_PI * j / count;
      RealVector xi(2);
      xi << std::cos(theta), std::sin(theta);
      out.push_back(xi);
    }
    return out;
  }
  if (n == 3) {
    const double golden_angle = M_PI * (3 - std::sqrt(5.0));
    for (int j = 0; j < count; ++j) {
      double z = 1 - 2 * (j + 0.5) / count;
      double rho = std::sqrt(std::max(0.0, 1 - z * z));
      double phi = golden_angle * j;
      RealVector xi(3);
      xi << rho * std::cos(phi), rho * std::sin(phi), z;
      out.push_back(xi);
    }
    return out;
  }
  auto alpha = kronecker_alphas(n);
  for (int j = 0; j < count; ++j) {
    RealVector xi(n);
    for (int i = 0; i < n; ++i) {
      double u = 0.5 + (j + 1) * alpha[static_cast<size_t>(i)];
      u -= std::floor(u);
      u = std::min(std::max(u, 1e-12), 1 - 1e-12);
      xi(i) = inverse_normal_cdf(u);
    }
    out.push_back(normalize_or_pole(xi));
  }
  return out;
}

namespace {

SphereExtremum pattern_search_min(int n, int count,
                                  const std::function<Real(const RealVector&)>& f) {
  auto grid = unit_sphere_samples(n, count);
  SphereExtremum best{f(grid.front()), grid.front()};
  std::vector<Real> values(grid.size());
  parallel_for(grid.size(), [&](std::size_t i) { values[i] = f(grid[i]); });
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (values[i] < best.value) best = {values[i], grid[i]};
  }

  // Local cap refinement: probe directions around the incumbent, shrink the cap
  // radius geometrically. Deterministic and cheap; recovers degeneracies the
  // grid brackets but cannot hit.
  std::vector<RealVector> probes;
  for (int i = 0; i < n; ++i) {
    RealVector e = RealVector::Zero(n);
    e(i) = 1;
    probes.push_back(e);
    probes.push_back(-e);
  }
  for (const auto& extra : unit_sphere_samples(n, 16)) probes.push_back(extra);

  double rho = 0.5;
  while (rho > 1e-10) {
    bool improved = false;
    for (const auto& d : probes) {
      RealVector cand = best.xi + rho * d;
      double norm = cand.norm();
      if (norm < 1e-8) continue;
      cand /= norm;
      Real value = f(cand);
      if (value < best.value) {
        best = {value, cand};
        improved = true;
      }
    }
    if (!improved) rho *= 0.6;
  }
  return best;
}

}  // namespace

SphereExtremum minimize_over_sphere(int n, int count,
                                    const std::function<Real(const RealVector&)>& f) {
  return pattern_search_min(n, count, f);
}

SphereExtremum maximize_over_sphere(int n, int count,
                                    const std::function<Real(const RealVector&)>& f) {
  SphereExtremum flipped =
      pattern_search_min(n, count, [&](const RealVector& xi) { return -f(xi); });
  return {-flipped.value, flipped.xi};
}

}  // namespace ebvp
