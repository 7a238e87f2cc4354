#include "eigensel/coefficient.hpp"

#include <cmath>

namespace eigensel {

namespace {

template <typename Apply, typename ApplyAdjoint>
double power_norm2(Index n, Apply apply, ApplyAdjoint apply_adjoint, double rel_tol, int max_iter) {
  if (n == 0) {
    return 0.0;
  }
  // Deterministic, not aligned with any coordinate axis.
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    v(i) = Complex(1.0 + 0.1 * std::sin(1.0 + i), 0.05 * std::cos(2.0 + i));
  }
  v.normalize();
  double sigma = 0.0;
  for (int it = 0; it < max_iter; ++it) {
    const CVector av = apply(v);
    const double next = av.norm();
    if (next == 0.0) {
      return sigma;
    }
    CVector w = apply_adjoint(av);
    const double wn = w.norm();
    if (wn == 0.0) {
      return next;
    }
    v = w / wn;
    if (std::abs(next - sigma) <= rel_tol * 1e-3 * next) {
      return next;
    }
    sigma = next;
  }
  return sigma;
}

}  // namespace

Coefficient::Coefficient(CMatrix dense) : storage_(std::move(dense)) {}
Coefficient::Coefficient(SparseCMatrix sparse) : storage_(std::move(sparse)) {
  std::get<SparseCMatrix>(storage_).makeCompressed();
}

Index Coefficient::rows() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.rows()); }, storage_);
}

Index Coefficient::cols() const {
  return std::visit([](const auto& m) { return static_cast<Index>(m.cols()); }, storage_);
}

CVector Coefficient::apply(const CVector& v) const {
  return std::visit([&](const auto& m) -> CVector { return m * v; }, storage_);
}

CVector Coefficient::apply_adjoint(const CVector& v) const {
  return std::visit([&](const auto& m) -> CVector { return m.adjoint() * v; }, storage_);
}

void Coefficient::add_to(CMatrix& acc, Complex scale) const {
  if (scale == Complex(0.0)) {
    return;
  }
  if (const auto* d = std::get_if<CMatrix>(&storage_)) {
    acc.noalias() += scale * (*d);
    return;
  }
  const auto& s = std::get<SparseCMatrix>(storage_);
  for (Index k = 0; k < s.outerSize(); ++k) {
    for (SparseCMatrix::InnerIterator it(s, k); it; ++it) {
      acc(it.row(), it.col()) += scale * it.value();
    }
  }
}

void Coefficient::add_to(SparseCMatrix& acc, Complex scale) const {
  if (scale == Complex(0.0)) {
    return;
  }
  acc += scale * to_sparse();
}

CMatrix Coefficient::to_dense() const {
  if (const auto* d = std::get_if<CMatrix>(&storage_)) {
    return *d;
  }
  return CMatrix(std::get<SparseCMatrix>(storage_));
}

SparseCMatrix Coefficient::to_sparse() const {
  if (const auto* s = std::get_if<SparseCMatrix>(&storage_)) {
    return *s;
  }
  return std::get<CMatrix>(storage_).sparseView();
}

double Coefficient::norm1() const {
  if (const auto* d = std::get_if<CMatrix>(&storage_)) {
    return d->cols() == 0 ? 0.0 : d->cwiseAbs().colwise().sum().maxCoeff();
  }
  const auto& s = std::get<SparseCMatrix>(storage_);
  double best = 0.0;
  for (Index k = 0; k < s.outerSize(); ++k) {
    double col = 0.0;
    for (SparseCMatrix::InnerIterator it(s, k); it; ++it) {
      col += std::abs(it.value());
    }
    best = std::max(best, col);
  }
  return best;
}

double Coefficient::norm2_estimate(double rel_tol, int max_iter) const {
  return power_norm2(
      cols(), [&](const CVector& v) { return apply(v); },
      [&](const CVector& v) { return apply_adjoint(v); }, rel_tol, max_iter);
}

double norm2_estimate(const CMatrix& a, double rel_tol, int max_iter) {
  return power_norm2(
      a.cols(), [&](const CVector& v) -> CVector { return a * v; },
      [&](const CVector& v) -> CVector { return a.adjoint() * v; }, rel_tol, max_iter);
}

}  // namespace eigensel
