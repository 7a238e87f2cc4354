#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "eigensel/homogeneous.hpp"
#include "eigensel/problems.hpp"

namespace eigensel {

struct LinearOperator {
  Index n = 0;
  std::function<CVector(const CVector&)> apply;
};

/// Approximation of M^{-1}; solve must be safe for concurrent calls.
struct Preconditioner {
  Index n = 0;
  std::function<CVector(const CVector&)> solve;
};

LinearOperator dense_operator(const CMatrix& a);
Preconditioner identity_preconditioner(Index n);

/// Exact LU of a dense or sparse matrix. Throws SingularShift when the
/// matrix is singular to working precision.
Preconditioner lu_preconditioner(const CMatrix& a);
Preconditioner lu_preconditioner(const SparseCMatrix& a);
/// LU of P(tau) (sparse factorization when any coefficient is sparse).
Preconditioner lu_preconditioner(const PolyProblem& problem, Complex tau);
Preconditioner lu_preconditioner(const NepProblem& problem, Complex tau);

struct GmresResult {
  CVector x;
  double residual = 0.0;  // ||b - A x|| / ||b||
  int iterations = 0;
  bool converged = false;
  std::vector<double> history;  // relative residual after each iteration
};

/// Right-preconditioned GMRES without restarts.
GmresResult gmres(const LinearOperator& a, const CVector& b, const CVector& x0, double tol, int maxit,
                  const Preconditioner* m = nullptr);

/// Jacobi-Davidson correction: approximately solve
///   (I - u v^H / (v^H u)) A t = -r,  t orthogonal to v (unit),
/// with `steps` GMRES iterations and the preconditioner projected onto the
/// same spaces. Falls back to t = -M^{-1} r orthogonalized against v when
/// |v^H u| or |v^H M^{-1} u| is below threshold. Returns t with v^H t = 0.
CVector jd_correction(const LinearOperator& a, const CVector& u, const CVector& v, const CVector& r,
                      int steps, const Preconditioner* m = nullptr,
                      std::vector<double>* history = nullptr);

/// The correction equation with A = P(theta), u = P'(theta) v.
CVector projected_correction_solve(const PolyProblem& problem, Complex theta, const CVector& v,
                                   const CVector& r, int steps, const Preconditioner* m = nullptr,
                                   std::vector<double>* history = nullptr);

struct NullVectorResult {
  CVector y;
  double residual = 0.0;  // ||Z y||
  bool converged = false;
  int restarts = 0;
};

/// Inner solver for Z x = b used by null_vector.
using InnerSolve = std::function<CVector(const CVector&)>;

/// Null vector of a (nearly) singular Z: b = Z y0 / s with s = ||Z y0||,
/// x ~ Z^{-1} b, y = (x - y0 / s) / ||x - y0 / s||. Success means
/// ||Z y|| <= eps. Stalls restart from a seeded random y0 (at most 3 times,
/// then NoProgress); a missed tolerance repeats the step from y (at most 3
/// times) and returns the best y with converged = false.
NullVectorResult null_vector(const LinearOperator& z, const CVector& y0, double eps,
                             const InnerSolve& inner, std::uint64_t seed = 7);
/// Same, with GMRES (tolerance eps) as the inner solver.
NullVectorResult null_vector(const LinearOperator& z, const CVector& y0, double eps,
                             const Preconditioner* m = nullptr, std::uint64_t seed = 7);

/// Left eigenvector y with P(lambda)^H y = 0 by the null-vector iteration,
/// the inner solve being one factorization of P(lambda)^H + delta I.
/// eps is relative to residual_scale(lambda).
NullVectorResult left_eigenvector(const PolyProblem& problem, Complex lambda, double eps = 1e-10,
                                  std::uint64_t seed = 7);
/// Homogeneous variant for P(alpha, beta)^H; eps relative to hom_residual_scale.
NullVectorResult left_eigenvector(const PolyProblem& problem, const ProjectivePoint& p,
                                  double eps = 1e-10, std::uint64_t seed = 7);

}  // namespace eigensel
