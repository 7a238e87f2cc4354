#pragma once

#include <cstdint>

#include "eigensel/problems.hpp"

namespace eigensel {

/// lambda^2 A + lambda B + C with A = diag(0, U[0,1], ...), B tridiagonal
/// skew (+1 above, -1 below the diagonal), C = diag(U(-1,0)). Sparse storage.
PolyProblem gen_gyroscopic(Index n, std::uint64_t seed);

/// The pencil A - lambda I with A = [[0, eps], [0, delta]].
PolyProblem gen_example_2x2(double delta, double eps);

/// Degree-m polynomial with standard complex Gaussian entries.
PolyProblem gen_random_pep(Index n, int m, std::uint64_t seed, bool symmetric = false);

/// Quadratic lambda^2 I + lambda B + C with diagonal B, C (a fixture for exact roots).
PolyProblem make_diagonal_qep(const RVector& b, const RVector& c);

}  // namespace eigensel
