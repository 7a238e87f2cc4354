#pragma once

#include <array>

#include "eigensel/mep.hpp"

namespace eigensel {

/// Chebyshev nodes and differentiation matrix on [-1, 1] with N + 1 points,
/// nodes in ascending order.
struct Chebyshev {
  RVector x;
  Eigen::MatrixXd d;
};
Chebyshev chebyshev(int n);

/// Interior collocation nodes of interval i (0-based) in ascending order.
RVector fourpoint_grid(int n, int interval);

/// Three-parameter Mathieu-type problem on [0,1], [1,2], [2,3]:
///   y'' + (lambda + 2 mu cos x + 2 nu cos 2x) y = 0 with Dirichlet ends,
/// as A_i = -D2, B_i = I, C_i = 2 diag(cos x), D_i = 2 diag(cos 2x) on the
/// N - 1 interior Chebyshev nodes of each interval. Requires N >= 8.
LinearMep gen_fourpoint_bvp(int n);

/// Strict sign changes of consecutive entries, ignoring entries with
/// magnitude below 1e-8 ||x||_inf.
int oscillation_index(const RVector& x);

/// Real representative of a complex eigenvector (phase of the largest entry removed).
RVector real_phase(const CVector& x);

/// Oscillation indices of the three factors of a fourpoint eigenvector.
std::array<int, 3> fourpoint_indices(const std::vector<CVector>& factors);

}  // namespace eigensel
