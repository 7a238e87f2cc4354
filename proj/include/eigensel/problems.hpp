#pragma once

#include <functional>
#include <vector>

#include "eigensel/coefficient.hpp"
#include "eigensel/types.hpp"

namespace eigensel {

/// A (possibly nonlinear) eigenvalue problem F(lambda) x = 0.
class NepProblem {
 public:
  virtual ~NepProblem() = default;

  virtual Index dim() const = 0;
  virtual CMatrix eval(Complex lambda) const = 0;
  virtual CMatrix derivative(Complex lambda) const = 0;
  /// F[lambda, mu], continuous across lambda == mu.
  virtual CMatrix divided_difference(Complex lambda, Complex mu) const = 0;

  virtual CVector apply(Complex lambda, const CVector& x) const { return eval(lambda) * x; }
  virtual CVector apply_adjoint(Complex lambda, const CVector& y) const {
    return eval(lambda).adjoint() * y;
  }
  virtual CVector apply_derivative(Complex lambda, const CVector& x) const {
    return derivative(lambda) * x;
  }
  virtual CVector apply_divided_difference(Complex lambda, Complex mu, const CVector& x) const {
    return divided_difference(lambda, mu) * x;
  }

  /// Denominator of the relative residual ||F(lambda)x|| / scale.
  virtual double residual_scale(Complex lambda) const = 0;
  /// Cheap upper estimate of ||F'(lambda)||_2, used by defectiveness checks.
  virtual double derivative_norm_estimate(Complex lambda) const = 0;
};

/// Matrix polynomial P(lambda) = sum_i lambda^i A_i.
class PolyProblem final : public NepProblem {
 public:
  explicit PolyProblem(std::vector<Coefficient> coeffs);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  Index dim() const override { return n_; }
  const Coefficient& coeff(int i) const { return coeffs_[static_cast<std::size_t>(i)]; }
  const std::vector<Coefficient>& coeffs() const { return coeffs_; }
  /// ||A_i||_1, cached at construction.
  const std::vector<double>& coeff_norms() const { return norms1_; }
  /// ||A_i||_2 estimates, cached at construction.
  const std::vector<double>& coeff_norms2() const { return norms2_; }
  bool any_sparse() const { return any_sparse_; }

  CMatrix eval(Complex lambda) const override;
  SparseCMatrix eval_sparse(Complex lambda) const;
  CMatrix derivative(Complex lambda) const override;
  CMatrix divided_difference(Complex lambda, Complex theta) const override;

  CVector apply(Complex lambda, const CVector& x) const override;
  CVector apply_adjoint(Complex lambda, const CVector& y) const override;
  CVector apply_derivative(Complex lambda, const CVector& x) const override;
  CVector apply_divided_difference(Complex lambda, Complex mu, const CVector& x) const override;

  /// sum_i w[i] A_i, dense or sparse.
  CMatrix combine(const std::vector<Complex>& w) const;
  SparseCMatrix combine_sparse(const std::vector<Complex>& w) const;
  CVector apply_weighted(const std::vector<Complex>& w, const CVector& x) const;
  CVector apply_weighted_adjoint(const std::vector<Complex>& w, const CVector& y) const;

  double residual_scale(Complex lambda) const override;
  double derivative_norm_estimate(Complex lambda) const override;

 private:
  std::vector<Coefficient> coeffs_;
  std::vector<double> norms1_;
  std::vector<double> norms2_;
  Index n_ = 0;
  bool any_sparse_ = false;
};

/// Weights of A_0..A_m in P(lambda): lambda^i.
std::vector<Complex> eval_weights(int m, Complex lambda);
/// Weights of A_0..A_m in P'(lambda): i lambda^(i-1).
std::vector<Complex> derivative_weights(int m, Complex lambda);
/// Weights of A_0..A_m in P[lambda, theta]: sum_{i<j} lambda^i theta^(j-1-i).
/// Symmetric in its arguments bit for bit.
std::vector<Complex> divided_difference_weights(int m, Complex lambda, Complex theta);

/// F given by callbacks for F and F'.
class GeneralNep final : public NepProblem {
 public:
  using MatrixFn = std::function<CMatrix(Complex)>;

  GeneralNep(Index n, MatrixFn eval, MatrixFn deriv, double coincidence_tol = 1e-8);

  Index dim() const override { return n_; }
  CMatrix eval(Complex lambda) const override;
  CMatrix derivative(Complex lambda) const override;
  /// (F(lambda) - F(mu)) / (lambda - mu), or F'(lambda) when
  /// |lambda - mu| <= coincidence_tol * max(1, |lambda|).
  CMatrix divided_difference(Complex lambda, Complex mu) const override;
  double residual_scale(Complex lambda) const override;
  double derivative_norm_estimate(Complex lambda) const override;
  double coincidence_tol() const { return tol_; }

 private:
  Index n_;
  MatrixFn eval_;
  MatrixFn deriv_;
  double tol_;
};

/// Absolute eigenvalue condition number sum_i |lambda|^i ||A_i||_2 / |y^H P'(lambda) x|.
/// Throws IllConditioned when the denominator is at rounding level.
double condition_number(const PolyProblem& problem, Complex lambda, const CVector& x,
                        const CVector& y);

}  // namespace eigensel
