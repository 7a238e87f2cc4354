#include "eigensel/problems.hpp"

#include <cmath>
#include <limits>

namespace eigensel {

namespace {

std::vector<Complex> powers(Complex z, int count) {
  std::vector<Complex> p(static_cast<std::size_t>(std::max(count, 1)));
  p[0] = Complex(1.0);
  for (int i = 1; i < count; ++i) {
    p[static_cast<std::size_t>(i)] = p[static_cast<std::size_t>(i - 1)] * z;
  }
  return p;
}

}  // namespace

std::vector<Complex> eval_weights(int m, Complex lambda) { return powers(lambda, m + 1); }

std::vector<Complex> derivative_weights(int m, Complex lambda) {
  const auto p = powers(lambda, m + 1);
  std::vector<Complex> w(static_cast<std::size_t>(m + 1), Complex(0.0));
  for (int i = 1; i <= m; ++i) {
    w[static_cast<std::size_t>(i)] = static_cast<double>(i) * p[static_cast<std::size_t>(i - 1)];
  }
  return w;
}

std::vector<Complex> divided_difference_weights(int m, Complex lambda, Complex theta) {
  const auto pl = powers(lambda, m);
  const auto pt = powers(theta, m);
  std::vector<Complex> w(static_cast<std::size_t>(m + 1), Complex(0.0));
  for (int j = 1; j <= m; ++j) {
    // terms lambda^i theta^k with i + k = j - 1, summed in symmetric pairs
    Complex s(0.0);
    const int top = j - 1;
    for (int i = 0; 2 * i < top; ++i) {
      const int k = top - i;
      s += pl[static_cast<std::size_t>(i)] * pt[static_cast<std::size_t>(k)] +
           pl[static_cast<std::size_t>(k)] * pt[static_cast<std::size_t>(i)];
    }
    if (top % 2 == 0) {
      const auto h = static_cast<std::size_t>(top / 2);
      s += pl[h] * pt[h];
    }
    w[static_cast<std::size_t>(j)] = s;
  }
  return w;
}

PolyProblem::PolyProblem(std::vector<Coefficient> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) {
    throw InvalidArgument("PolyProblem needs degree m >= 1 (at least two coefficients)");
  }
  n_ = coeffs_.front().rows();
  for (const auto& c : coeffs_) {
    if (c.rows() != n_ || c.cols() != n_) {
      throw InvalidArgument("PolyProblem coefficients must be square and of equal size");
    }
    any_sparse_ = any_sparse_ || c.is_sparse();
    norms1_.push_back(c.norm1());
    norms2_.push_back(c.norm2_estimate());
  }
}

CMatrix PolyProblem::eval(Complex lambda) const {
  CMatrix p = coeffs_.back().to_dense();
  for (int i = degree() - 1; i >= 0; --i) {
    p *= lambda;
    coeffs_[static_cast<std::size_t>(i)].add_to(p, Complex(1.0));
  }
  return p;
}

SparseCMatrix PolyProblem::eval_sparse(Complex lambda) const {
  SparseCMatrix p = coeffs_.back().to_sparse();
  for (int i = degree() - 1; i >= 0; --i) {
    p *= lambda;
    coeffs_[static_cast<std::size_t>(i)].add_to(p, Complex(1.0));
  }
  p.makeCompressed();
  return p;
}

CMatrix PolyProblem::combine(const std::vector<Complex>& w) const {
  CMatrix out = CMatrix::Zero(n_, n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i].add_to(out, w[i]);
  }
  return out;
}

SparseCMatrix PolyProblem::combine_sparse(const std::vector<Complex>& w) const {
  SparseCMatrix out(n_, n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    coeffs_[i].add_to(out, w[i]);
  }
  out.makeCompressed();
  return out;
}

CVector PolyProblem::apply_weighted(const std::vector<Complex>& w, const CVector& x) const {
  CVector y = CVector::Zero(n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (w[i] != Complex(0.0)) {
      y += w[i] * coeffs_[i].apply(x);
    }
  }
  return y;
}

CVector PolyProblem::apply_weighted_adjoint(const std::vector<Complex>& w, const CVector& y) const {
  CVector out = CVector::Zero(n_);
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (w[i] != Complex(0.0)) {
      out += std::conj(w[i]) * coeffs_[i].apply_adjoint(y);
    }
  }
  return out;
}

CMatrix PolyProblem::derivative(Complex lambda) const {
  return combine(derivative_weights(degree(), lambda));
}

CMatrix PolyProblem::divided_difference(Complex lambda, Complex theta) const {
  return combine(divided_difference_weights(degree(), lambda, theta));
}

CVector PolyProblem::apply(Complex lambda, const CVector& x) const {
  return apply_weighted(eval_weights(degree(), lambda), x);
}

CVector PolyProblem::apply_adjoint(Complex lambda, const CVector& y) const {
  return apply_weighted_adjoint(eval_weights(degree(), lambda), y);
}

CVector PolyProblem::apply_derivative(Complex lambda, const CVector& x) const {
  return apply_weighted(derivative_weights(degree(), lambda), x);
}

CVector PolyProblem::apply_divided_difference(Complex lambda, Complex mu, const CVector& x) const {
  return apply_weighted(divided_difference_weights(degree(), lambda, mu), x);
}

double PolyProblem::residual_scale(Complex lambda) const {
  double s = 0.0;
  double p = 1.0;
  for (double a : norms1_) {
    s += p * a;
    p *= std::abs(lambda);
  }
  return s;
}

double PolyProblem::derivative_norm_estimate(Complex lambda) const {
  double s = 0.0;
  double p = 1.0;
  for (std::size_t i = 1; i < norms2_.size(); ++i) {
    s += static_cast<double>(i) * p * norms2_[i];
    p *= std::abs(lambda);
  }
  return s;
}

GeneralNep::GeneralNep(Index n, MatrixFn eval, MatrixFn deriv, double coincidence_tol)
    : n_(n), eval_(std::move(eval)), deriv_(std::move(deriv)), tol_(coincidence_tol) {
  if (!eval_ || !deriv_) {
    throw InvalidArgument("GeneralNep needs both F and F' callbacks");
  }
  if (!(tol_ > 0.0)) {
    throw InvalidArgument("GeneralNep coincidence_tol must be positive");
  }
}

CMatrix GeneralNep::eval(Complex lambda) const {
  CMatrix f = eval_(lambda);
  if (f.rows() != n_ || f.cols() != n_) {
    throw InvalidArgument("GeneralNep F callback returned a matrix of the wrong size");
  }
  return f;
}

CMatrix GeneralNep::derivative(Complex lambda) const {
  CMatrix f = deriv_(lambda);
  if (f.rows() != n_ || f.cols() != n_) {
    throw InvalidArgument("GeneralNep F' callback returned a matrix of the wrong size");
  }
  return f;
}

CMatrix GeneralNep::divided_difference(Complex lambda, Complex mu) const {
  if (std::abs(lambda - mu) > tol_ * std::max(1.0, std::abs(lambda))) {
    return (eval(lambda) - eval(mu)) / (lambda - mu);
  }
  return derivative(lambda);
}

double GeneralNep::residual_scale(Complex lambda) const {
  const CMatrix f = eval(lambda);
  return f.cwiseAbs().colwise().sum().maxCoeff();
}

double GeneralNep::derivative_norm_estimate(Complex lambda) const {
  return norm2_estimate(derivative(lambda));
}

double condition_number(const PolyProblem& problem, Complex lambda, const CVector& x,
                        const CVector& y) {
  const Complex den = y.dot(problem.apply_derivative(lambda, x));
  const double floor = 16.0 * std::numeric_limits<double>::epsilon() *
                       std::max(problem.derivative_norm_estimate(lambda), 1e-300);
  if (std::abs(den) <= floor) {
    throw IllConditioned("y^H P'(lambda) x is at rounding level; eigenvalue looks defective");
  }
  double num = 0.0;
  double p = 1.0;
  for (double a : problem.coeff_norms2()) {
    num += p * a;
    p *= std::abs(lambda);
  }
  return num / std::abs(den);
}

}  // namespace eigensel
