#pragma once

#include <vector>

#include "eigensel/homogeneous.hpp"

namespace eigensel {

struct OracleTriplet {
  ProjectivePoint point;
  bool infinite = false;
  Complex value{0.0, 0.0};  // alpha / beta when finite
  CVector right;
  CVector left;
};

/// Size cap for dense oracles: EIGENSEL_ORACLE_CAP or 2000.
Index oracle_size_cap();

/// Every eigenvalue (finite or infinite) of the polynomial problem with unit
/// right and left vectors, from the companion linearization.
/// Throws SizeCapExceeded when m * n exceeds oracle_size_cap().
std::vector<OracleTriplet> oracle_all_eigenpairs(const PolyProblem& problem);

/// Oracle triplets with finite values sorted by distance to tau.
std::vector<OracleTriplet> oracle_nearest(const PolyProblem& problem, Complex tau, std::size_t count);

}  // namespace eigensel
