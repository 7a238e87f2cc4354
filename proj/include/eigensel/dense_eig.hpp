#pragma once

#include <vector>

#include "eigensel/homogeneous.hpp"

namespace eigensel {

/// Generalized eigenproblem A z = lambda B z, eigenvalues as (alpha, beta).
struct GeneralizedEig {
  CVector alpha;
  CVector beta;
  CMatrix right;  // columns, unnormalized
  CMatrix left;   // columns w with w^H A = lambda w^H B
};

GeneralizedEig generalized_eig(const CMatrix& a, const CMatrix& b, bool want_left, bool want_right);

struct StandardEig {
  CVector values;
  CMatrix right;
  CMatrix left;
};

StandardEig standard_eig(const CMatrix& a, bool want_left, bool want_right);

/// All mn eigenpairs of sum_i lambda^i H_i (dense, n x n each) via the
/// companion linearization. Right vectors are the max-norm block for finite
/// eigenvalues and the last block at infinity; left vectors are the last
/// block. Vectors are unit norm.
struct PolyEig {
  std::vector<ProjectivePoint> points;
  CMatrix right;
  CMatrix left;
};

PolyEig polynomial_eig(const std::vector<CMatrix>& coeffs, bool want_left);

}  // namespace eigensel
