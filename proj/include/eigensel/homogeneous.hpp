#pragma once

#include <optional>
#include <vector>

#include "eigensel/problems.hpp"

namespace eigensel {

/// Homogeneous eigenvalue (alpha, beta) with lambda = alpha / beta and
/// |alpha|^2 + |beta|^2 = 1. (1, 0) encodes lambda = infinity.
struct ProjectivePoint {
  Complex alpha{0.0, 0.0};
  Complex beta{1.0, 0.0};
};

/// (a, b) / ||(a, b)||, without any phase change. Throws on the zero vector.
ProjectivePoint normalized_point(Complex a, Complex b);
/// (lambda, 1) normalized and canonically scaled.
ProjectivePoint from_scalar(Complex lambda);
ProjectivePoint infinity_point();

/// Rotate by a unit scalar so that the coordinate of larger modulus is real
/// and nonnegative (beta wins ties).
ProjectivePoint scale_canonical(const ProjectivePoint& p);
/// Rotate p by a unit scalar so that ref^H p is real and nonnegative.
/// When ref has a zero coordinate this makes the coordinate dominant in ref
/// real nonnegative in p.
ProjectivePoint align(const ProjectivePoint& p, const ProjectivePoint& ref);

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q);

bool is_infinite(const ProjectivePoint& p, double tol = 1e-14);
/// alpha / beta, or nullopt when |beta| < tol.
std::optional<Complex> to_finite(const ProjectivePoint& p, double tol = 1e-14);

/// Weights of A_0..A_m in P(alpha, beta) = sum_i alpha^i beta^(m-i) A_i.
std::vector<Complex> hom_eval_weights(int m, const ProjectivePoint& p);
/// Weights of A_0..A_m in DP(alpha, beta).
std::vector<Complex> hom_D_weights(int m, const ProjectivePoint& p);
/// Weights of A_0..A_m in P[p, q] after aligning q to p.
std::vector<Complex> hom_divided_difference_weights(int m, const ProjectivePoint& p,
                                                    const ProjectivePoint& q,
                                                    double switch_tol = 1e-8);

CMatrix hom_eval(const PolyProblem& problem, const ProjectivePoint& p);
/// conj(beta) d/dalpha P - conj(alpha) d/dbeta P.
CMatrix hom_D(const PolyProblem& problem, const ProjectivePoint& p);
/// (P(p) - P(q)) / (alpha1 beta2 - alpha2 beta1) with q aligned to p, or
/// hom_D(p) when the chordal distance is at most switch_tol.
CMatrix hom_divided_difference(const PolyProblem& problem, const ProjectivePoint& p,
                               const ProjectivePoint& q, double switch_tol = 1e-8);

/// Sum_i |alpha|^i |beta|^(m-i) ||A_i||_1, the homogeneous residual scale.
double hom_residual_scale(const PolyProblem& problem, const ProjectivePoint& p);

struct MediatorCoefficients {
  Complex c1;
  Complex c2;
};

/// For a quadratic, the numerator D = Q(p) - Q(q) equals c1 D1 + c2 D2 with
///   D1 = (a1 b2 + a2 b1) A + b1 b2 B,  D2 = a1 a2 B + (a1 b2 + a2 b1) C.
/// Throws DegenerateConfiguration when a1 b2 + a2 b1 vanishes.
MediatorCoefficients mediator_decompose(const ProjectivePoint& p, const ProjectivePoint& q);

}  // namespace eigensel
