#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "eigensel/kernels.hpp"
#include "eigensel/types.hpp"

namespace eigensel {

/// Linear k-parameter eigenvalue problem (k = 2 or 3):
///   (A_i - sum_j theta_j C_ij) x_i = 0,  i = 1..k.
/// For k = 2, C_i0 = B_i, C_i1 = C_i; for k = 3, C_i2 = D_i.
class LinearMep {
 public:
  LinearMep(std::vector<CMatrix> a, std::vector<std::vector<CMatrix>> c);

  static LinearMep two(CMatrix a1, CMatrix b1, CMatrix c1, CMatrix a2, CMatrix b2, CMatrix c2);
  static LinearMep three(CMatrix a1, CMatrix b1, CMatrix c1, CMatrix d1, CMatrix a2, CMatrix b2,
                         CMatrix c2, CMatrix d2, CMatrix a3, CMatrix b3, CMatrix c3, CMatrix d3);

  int k() const { return static_cast<int>(a_.size()); }
  Index n(int i) const { return a_[static_cast<std::size_t>(i)].rows(); }
  Index total_dim() const;
  const CMatrix& a(int i) const { return a_[static_cast<std::size_t>(i)]; }
  const CMatrix& c(int i, int j) const {
    return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  }
  /// A_i - sum_j theta_j C_ij.
  CMatrix pencil(int i, const std::vector<Complex>& theta) const;
  /// ||A_i||_1 + sum_j |theta_j| ||C_ij||_1.
  double pencil_scale(int i, const std::vector<Complex>& theta) const;

 private:
  std::vector<CMatrix> a_;
  std::vector<std::vector<CMatrix>> c_;
};

using LinearMep2 = LinearMep;
using LinearMep3 = LinearMep;

/// Sum of Kronecker products, applied without forming them.
class KronOperator {
 public:
  void add_term(Complex coeff, std::vector<std::shared_ptr<const CMatrix>> factors);

  Index rows() const;
  Index cols() const;
  std::size_t num_terms() const { return coeffs_.size(); }
  CVector apply(const CVector& x, kernels::Backend backend = kernels::default_backend()) const;
  CMatrix to_dense() const;

 private:
  std::vector<Complex> coeffs_;
  std::vector<std::vector<std::shared_ptr<const CMatrix>>> factors_;
};

/// Operator determinant of a k x k block array (k = 2 or 3); row i acts on
/// factor space i: sum over permutations s of sign(s) M[0][s0] (x) ... (x) M[k-1][s(k-1)].
KronOperator operator_determinant(const std::vector<std::vector<CMatrix>>& blocks);

/// Delta_0 (columns C_i0..C_i(k-1)) and Delta_j (column j replaced by A_i).
std::vector<KronOperator> delta_operators(const LinearMep& mep);

struct MepTriplet {
  std::vector<Complex> value;
  std::vector<CVector> right;
  std::vector<CVector> left;
  Complex denom{0.0, 0.0};
  double rank1_residual = 0.0;
  double residual = 0.0;  // max_i ||W_i x_i|| / pencil_scale_i
  bool flagged = false;   // rank-1 recovery failed (non-simple eigenvalue)
  int iteration = -1;
};

/// Determinant of S(i,j) = y_i^H C_ij x_i, i.e. (y_1 (x) ...)^H Delta_0 (x_1 (x) ...).
Complex mep_delta0_form(const LinearMep& mep, const std::vector<CVector>& y,
                        const std::vector<CVector>& x);

/// Left factors y_i (smallest left singular vectors of W_i) and the denominator.
void mep_complete_triplet(const LinearMep& mep, MepTriplet& t);

/// All eigenvalues of a small MEP through the Delta matrices. Triplets that
/// fail rank-1 recovery are returned with flagged = true.
/// Throws SizeCapExceeded when prod n_i > cap (default oracle_size_cap()).
std::vector<MepTriplet> dense_solve(const LinearMep& mep, Index cap = 0);
inline std::vector<MepTriplet> dense_solve_2p(const LinearMep& mep, Index cap = 0) {
  return dense_solve(mep, cap);
}
inline std::vector<MepTriplet> dense_solve_3p(const LinearMep& mep, Index cap = 0) {
  return dense_solve(mep, cap);
}

/// Candidate tensor pair: parameters and unit factor vectors.
struct MepCandidate {
  std::vector<Complex> value;
  std::vector<CVector> factors;
};

/// Selection criterion: max_r |(y^(r))^H Delta_0 (v_1 (x) ...)| / |denom_r|,
/// evaluated factor-wise. 0 for an empty registry.
double mep_criterion(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                     const LinearMep& mep);
bool mep_passes(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                const LinearMep& mep, double eta_sel);
/// Batched criterion for candidates stored column-wise per factor.
RVector mep_criterion_values(const std::vector<MepTriplet>& registry,
                             const std::vector<CMatrix>& cand_factors, const LinearMep& mep,
                             kernels::Backend backend = kernels::default_backend());
/// Legacy test: max_r |num_r| < 1/2 min_r |denom_r|.
bool mep_passes_strict(const std::vector<MepTriplet>& registry, const MepCandidate& cand,
                       const LinearMep& mep);

/// Nonlinear multiparameter problem T_i(theta) acting on factor space i,
/// with one-variable divided differences.
struct MepFunction {
  Index n = 0;
  /// T_i evaluated at the parameter vector.
  std::function<CMatrix(const std::vector<Complex>&)> eval;
  /// Divided difference of T_i in parameter j between `at` (with parameter
  /// j = a) and the same point with parameter j = b; the partial derivative
  /// when a == b.
  std::function<CMatrix(int j, const std::vector<Complex>& at, Complex a, Complex b)> partial_dd;
};

/// One-variable divided difference by the difference quotient, switching to
/// a central difference of step h when |a - b| <= tol * max(1, |a|).
CMatrix difference_quotient(const std::function<CMatrix(const std::vector<Complex>&)>& eval, int j,
                            std::vector<Complex> at, Complex a, Complex b, double tol = 1e-8,
                            double h = 1e-6);

/// Divided-difference operator T[(l1, m1), (l2, m2)]: column 1 varies lambda
/// at (., m1), column 2 varies mu at (l2, .).
KronOperator dd_operator_2p(const std::vector<MepFunction>& t, const std::vector<Complex>& p1,
                            const std::vector<Complex>& p2);
/// Three-parameter version: columns vary lambda at (., m1, n1), mu at
/// (l2, ., n1), nu at (l2, m2, .).
KronOperator dd_operator_3p(const std::vector<MepFunction>& t, const std::vector<Complex>& p1,
                            const std::vector<Complex>& p2);

/// T_i(theta) = A_i - sum_j theta_j C_ij with exact divided differences.
std::vector<MepFunction> linear_mep_functions(const LinearMep& mep);

/// Column-major Kronecker product of dense matrices (last factor fastest).
CMatrix kron(const CMatrix& a, const CMatrix& b);

}  // namespace eigensel
