#pragma once

// Data-parallel inner loops. Every kernel has a serial reference
// implementation (kernels_serial.cpp) and an OpenMP implementation
// (kernels_parallel.cpp); the two must agree to rounding and are compared in
// tests/test_kernels.cpp and bench/bench_kernels.cpp.

#include <vector>

#include "eigensel/types.hpp"

namespace eigensel::kernels {

enum class Backend { serial, parallel };

/// parallel when the library was built with OpenMP, serial otherwise.
Backend default_backend();
bool parallel_available();
int max_threads();

/// out = sum_j weights[j] * mats[j]; all matrices share one shape.
CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats,
                Backend backend = default_backend());

/// Selection-criterion values for a batch of candidates.
///
/// left[j] is d x n with row i equal to y_i^H A_j, cands is n x nc (one
/// candidate vector per column), weights[j] is d x nc with the scalar that
/// multiplies A_j in the divided difference between registered value i and
/// candidate c. Returns, per candidate,
///   max_i |sum_j weights[j](i,c) * (left[j] * cands)(i,c)| / |denom(i)|,
/// and 0 when d == 0.
RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom,
                         Backend backend = default_backend());

/// Factorized multiparameter criterion for a batch of tensor candidates.
///
/// k = number of parameters. left[i][j] is d x n_i with row r equal to
/// (y_i^{(r)})^H C_ij, where C_ij is the j-th parameter matrix of equation i.
/// cands[i] is n_i x nc. For every registered r and candidate c the k x k
/// scalar matrix S(i,j) = (left[i][j] * cands[i])(r,c) is formed and
///   value(c) = max_r |det S| / |denom(r)|.
RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom,
                             Backend backend = default_backend());

/// One Kronecker term: coeff * (M_1 kron M_2 [kron M_3]).
struct KronTerm {
  Complex coeff{1.0, 0.0};
  std::vector<const CMatrix*> factors;
};

/// y = sum_t coeff_t (M_1 kron ... kron M_k) x without forming the Kronecker
/// products; x uses the index order of Eigen's kroneckerProduct (last factor
/// fastest). k is 2 or 3.
CVector kron_apply(const std::vector<KronTerm>& terms, const CVector& x,
                   Backend backend = default_backend());

namespace serial {
CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats);
RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom);
RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom);
CVector kron_apply(const std::vector<KronTerm>& terms, const CVector& x);
}  // namespace serial

namespace parallel {
CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats);
RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom);
RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom);
CVector kron_apply(const std::vector<KronTerm>& terms, const CVector& x);
}  // namespace parallel

/// Determinant of a small (k <= 3) complex matrix by cofactor expansion.
Complex small_det(const CMatrix& s);

}  // namespace eigensel::kernels
