#include "eigensel/homogeneous.hpp"

#include <cmath>

namespace eigensel {

namespace {

Complex unit_phase_of(Complex z) {
  const double a = std::abs(z);
  return a == 0.0 ? Complex(1.0) : z / a;
}

std::vector<Complex> powers(Complex z, int count) {
  std::vector<Complex> p(static_cast<std::size_t>(std::max(count, 1)));
  p[0] = Complex(1.0);
  for (int i = 1; i < count; ++i) {
    p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] * z;
  }
  return p;
}

}  // namespace

ProjectivePoint normalized_point(Complex a, Complex b) {
  const double nrm = std::hypot(std::abs(a), std::abs(b));
  if (nrm == 0.0) {
    throw InvalidArgument("projective point (0, 0) is undefined");
  }
  return {a / nrm, b / nrm};
}

ProjectivePoint from_scalar(Complex lambda) {
  if (!std::isfinite(lambda.real()) || !std::isfinite(lambda.imag())) {
    return infinity_point();
  }
  return scale_canonical(normalized_point(lambda, Complex(1.0)));
}

ProjectivePoint infinity_point() { return {Complex(1.0), Complex(0.0)}; }

ProjectivePoint scale_canonical(const ProjectivePoint& p) {
  const ProjectivePoint q = normalized_point(p.alpha, p.beta);
  const Complex lead = std::abs(q.beta) >= std::abs(q.alpha) ? q.beta : q.alpha;
  const Complex rot = std::conj(unit_phase_of(lead));
  return {q.alpha * rot, q.beta * rot};
}

ProjectivePoint align(const ProjectivePoint& p, const ProjectivePoint& ref) {
  const Complex ip = std::conj(ref.alpha) * p.alpha + std::conj(ref.beta) * p.beta;
  if (std::abs(ip) == 0.0) {
    return p;
  }
  const Complex rot = std::conj(unit_phase_of(ip));
  return {p.alpha * rot, p.beta * rot};
}

double chordal_distance(const ProjectivePoint& p, const ProjectivePoint& q) {
  const double np = std::hypot(std::abs(p.alpha), std::abs(p.beta));
  const double nq = std::hypot(std::abs(q.alpha), std::abs(q.beta));
  return std::min(1.0, std::abs(p.alpha * q.beta - q.alpha * p.beta) / (np * nq));
}

bool is_infinite(const ProjectivePoint& p, double tol) { return std::abs(p.beta) < tol; }

std::optional<Complex> to_finite(const ProjectivePoint& p, double tol) {
  if (is_infinite(p, tol)) {
    return std::nullopt;
  }
  return p.alpha / p.beta;
}

std::vector<Complex> hom_eval_weights(int m, const ProjectivePoint& p) {
  const auto pa = powers(p.alpha, m + 1);
  const auto pb = powers(p.beta, m + 1);
  std::vector<Complex> w(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) {
    w[static_cast<std::size_t>(i)] = pa[static_cast<std::size_t>(i)] * pb[static_cast<std::size_t>(m - i)];
  }
  return w;
}

std::vector<Complex> hom_D_weights(int m, const ProjectivePoint& p) {
  const auto pa = powers(p.alpha, m + 1);
  const auto pb = powers(p.beta, m + 1);
  std::vector<Complex> w(static_cast<std::size_t>(m + 1), Complex(0.0));
  for (int i = 0; i <= m; ++i) {
    Complex d_alpha(0.0);
    Complex d_beta(0.0);
    if (i >= 1) {
      d_alpha = static_cast<double>(i) * pa[static_cast<std::size_t>(i - 1)] *
                pb[static_cast<std::size_t>(m - i)];
    }
    if (m - i >= 1) {
      d_beta = static_cast<double>(m - i) * pa[static_cast<std::size_t>(i)] *
               pb[static_cast<std::size_t>(m - i - 1)];
    }
    w[static_cast<std::size_t>(i)] = std::conj(p.beta) * d_alpha - std::conj(p.alpha) * d_beta;
  }
  return w;
}

std::vector<Complex> hom_divided_difference_weights(int m, const ProjectivePoint& p,
                                                    const ProjectivePoint& q, double switch_tol) {
  const ProjectivePoint qa = align(q, p);
  if (chordal_distance(p, qa) <= switch_tol) {
    return hom_D_weights(m, p);
  }
  const auto wp = hom_eval_weights(m, p);
  const auto wq = hom_eval_weights(m, qa);
  const Complex den = p.alpha * qa.beta - qa.alpha * p.beta;
  std::vector<Complex> w(static_cast<std::size_t>(m + 1));
  for (std::size_t i = 0; i < w.size(); ++i) {
    w[i] = (wp[i] - wq[i]) / den;
  }
  return w;
}

CMatrix hom_eval(const PolyProblem& problem, const ProjectivePoint& p) {
  return problem.combine(hom_eval_weights(problem.degree(), p));
}

CMatrix hom_D(const PolyProblem& problem, const ProjectivePoint& p) {
  return problem.combine(hom_D_weights(problem.degree(), p));
}

CMatrix hom_divided_difference(const PolyProblem& problem, const ProjectivePoint& p,
                               const ProjectivePoint& q, double switch_tol) {
  return problem.combine(hom_divided_difference_weights(problem.degree(), p, q, switch_tol));
}

double hom_residual_scale(const PolyProblem& problem, const ProjectivePoint& p) {
  const int m = problem.degree();
  double s = 0.0;
  for (int i = 0; i <= m; ++i) {
    s += std::pow(std::abs(p.alpha), i) * std::pow(std::abs(p.beta), m - i) *
         problem.coeff_norms()[static_cast<std::size_t>(i)];
  }
  return s;
}

MediatorCoefficients mediator_decompose(const ProjectivePoint& p, const ProjectivePoint& q) {
  const Complex s = p.alpha * q.beta + q.alpha * p.beta;
  const double scale = std::max(1.0, std::abs(p.alpha * q.beta) + std::abs(q.alpha * p.beta));
  if (std::abs(s) <= 1e-14 * scale) {
    throw DegenerateConfiguration("mediator split undefined: alpha1 beta2 + alpha2 beta1 = 0");
  }
  return {(p.alpha * p.alpha - q.alpha * q.alpha) / s, (p.beta * p.beta - q.beta * q.beta) / s};
}

}  // namespace eigensel
