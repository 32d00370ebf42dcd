#pragma once

#include <functional>
#include <vector>

#include "ebvp/types.hpp"

namespace ebvp {

// Deterministic low-discrepancy grid on the Euclidean unit sphere S^{n-1}.
// n = 2 uses uniform angles, n = 3 a Fibonacci spiral, n >= 4 a Kronecker
// sequence pushed through the inverse normal CDF and normalized. The same call
// always returns the same points in the same order.
std::vector<RealVector> unit_sphere_samples(int n, int count);

struct SphereExtremum {
  Real value = 0;
  RealVector xi;
};

// Minimum of f over the unit sphere: coarse pass over unit_sphere_samples, then
// a deterministic pattern-search refinement around the best direction (cap
// radius shrinks to ~1e-10). The refinement is what lets exact degeneracies
// (f -> 0 along a curve between grid points) actually reach values below any
// sane tolerance instead of stalling at the grid resolution.
SphereExtremum minimize_over_sphere(int n, int count,
                                    const std::function<Real(const RealVector&)>& f);
SphereExtremum maximize_over_sphere(int n, int count,
                                    const std::function<Real(const RealVector&)>& f);

}  // namespace ebvp
