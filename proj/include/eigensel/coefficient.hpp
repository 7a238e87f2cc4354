#pragma once

#include <variant>

#include "eigensel/types.hpp"

namespace eigensel {

/// One coefficient matrix of a matrix polynomial, stored dense or sparse.
/// Everything downstream goes through apply()/add_to() so both storages
/// behave identically.
class Coefficient {
 public:
  Coefficient() = default;
  Coefficient(CMatrix dense);         // NOLINT(google-explicit-constructor)
  Coefficient(SparseCMatrix sparse);  // NOLINT(google-explicit-constructor)

  Index rows() const;
  Index cols() const;
  bool is_sparse() const { return std::holds_alternative<SparseCMatrix>(storage_); }

  CVector apply(const CVector& v) const;
  CVector apply_adjoint(const CVector& v) const;
  /// acc += scale * A
  void add_to(CMatrix& acc, Complex scale) const;
  void add_to(SparseCMatrix& acc, Complex scale) const;

  CMatrix to_dense() const;
  SparseCMatrix to_sparse() const;

  /// Maximum absolute column sum.
  double norm1() const;
  /// 2-norm estimate by power iteration on A^H A.
  double norm2_estimate(double rel_tol = 1e-3, int max_iter = 200) const;

 private:
  std::variant<CMatrix, SparseCMatrix> storage_;
};

/// Power-iteration estimate of ||A||_2 for a dense matrix.
double norm2_estimate(const CMatrix& a, double rel_tol = 1e-3, int max_iter = 200);

}  // namespace eigensel
