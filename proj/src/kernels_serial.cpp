#include "eigensel/kernels.hpp"

#include <cmath>

namespace eigensel::kernels {

Backend default_backend() { return parallel_available() ? Backend::parallel : Backend::serial; }

Complex small_det(const CMatrix& s) {
  switch (s.rows()) {
    case 0:
      return Complex(1.0);
    case 1:
      return s(0, 0);
    case 2:
      return s(0, 0) * s(1, 1) - s(0, 1) * s(1, 0);
    case 3:
      return s(0, 0) * (s(1, 1) * s(2, 2) - s(1, 2) * s(2, 1)) -
             s(0, 1) * (s(1, 0) * s(2, 2) - s(1, 2) * s(2, 0)) +
             s(0, 2) * (s(1, 0) * s(2, 1) - s(1, 1) * s(2, 0));
    default:
      return s.determinant();
  }
}

CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats,
                Backend backend) {
  return backend == Backend::parallel ? parallel::combine(weights, mats)
                                      : serial::combine(weights, mats);
}

RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom,
                         Backend backend) {
  return backend == Backend::parallel ? parallel::selection_values(left, cands, weights, denom)
                                      : serial::selection_values(left, cands, weights, denom);
}

RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom,
                             Backend backend) {
  return backend == Backend::parallel ? parallel::mep_selection_values(left, cands, denom)
                                      : serial::mep_selection_values(left, cands, denom);
}

CVector kron_apply(const std::vector<KronTerm>& terms, const CVector& x, Backend backend) {
  return backend == Backend::parallel ? parallel::kron_apply(terms, x)
                                      : serial::kron_apply(terms, x);
}

namespace serial {

CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats) {
  if (mats.empty()) {
    return {};
  }
  const Index rows = mats.front()->rows();
  const Index cols = mats.front()->cols();
  CMatrix out = CMatrix::Zero(rows, cols);
  for (std::size_t j = 0; j < mats.size(); ++j) {
    if (weights[j] == Complex(0.0)) {
      continue;
    }
    const CMatrix& m = *mats[j];
    for (Index c = 0; c < cols; ++c) {
      for (Index r = 0; r < rows; ++r) {
        out(r, c) += weights[j] * m(r, c);
      }
    }
  }
  return out;
}

RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom) {
  const Index nc = cands.cols();
  const Index d = denom.size();
  const Index n = cands.rows();
  RVector out = RVector::Zero(nc);
  for (Index c = 0; c < nc; ++c) {
    double best = 0.0;
    for (Index i = 0; i < d; ++i) {
      Complex num(0.0);
      for (std::size_t j = 0; j < left.size(); ++j) {
        const Complex w = weights[j](i, c);
        if (w == Complex(0.0)) {
          continue;
        }
        Complex dot(0.0);
        for (Index k = 0; k < n; ++k) {
          dot += left[j](i, k) * cands(k, c);
        }
        num += w * dot;
      }
      best = std::max(best, std::abs(num) / std::abs(denom(i)));
    }
    out(c) = best;
  }
  return out;
}

RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom) {
  const Index k = static_cast<Index>(left.size());
  const Index nc = cands.empty() ? 0 : cands.front().cols();
  const Index d = denom.size();
  RVector out = RVector::Zero(nc);
  CMatrix s(k, k);
  for (Index c = 0; c < nc; ++c) {
    double best = 0.0;
    for (Index r = 0; r < d; ++r) {
      for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
          Complex dot(0.0);
          for (Index q = 0; q < cands[i].rows(); ++q) {
            dot += left[i][j](r, q) * cands[i](q, c);
          }
          s(i, j) = dot;
        }
      }
      best = std::max(best, std::abs(small_det(s)) / std::abs(denom(r)));
    }
    out(c) = best;
  }
  return out;
}

CVector kron_apply(const std::vector<KronTerm>& terms, const CVector& x) {
  if (terms.empty()) {
    return CVector::Zero(x.size());
  }
  const auto& f0 = terms.front().factors;
  Index out_size = 1;
  for (const CMatrix* m : f0) {
    out_size *= m->rows();
  }
  CVector y = CVector::Zero(out_size);
  for (const KronTerm& t : terms) {
    if (t.factors.size() == 2) {
      const CMatrix& m1 = *t.factors[0];
      const CMatrix& m2 = *t.factors[1];
      Eigen::Map<const CMatrix> xm(x.data(), m2.cols(), m1.cols());
      CMatrix ym = m2 * xm * m1.transpose();
      y += t.coeff * Eigen::Map<const CVector>(ym.data(), ym.size());
    } else if (t.factors.size() == 3) {
      const CMatrix& m1 = *t.factors[0];
      const CMatrix& m2 = *t.factors[1];
      const CMatrix& m3 = *t.factors[2];
      const Index n1 = m1.cols();
      const Index n23 = m2.cols() * m3.cols();
      Eigen::Map<const CMatrix> xm(x.data(), n23, n1);
      const CMatrix mode1 = xm * m1.transpose();  // (n2 n3) x r1
      const Index r23 = m2.rows() * m3.rows();
      for (Index i1 = 0; i1 < m1.rows(); ++i1) {
        Eigen::Map<const CMatrix> slice(mode1.col(i1).data(), m3.cols(), m2.cols());
        CMatrix z = m3 * slice * m2.transpose();
        y.segment(i1 * r23, r23) += t.coeff * Eigen::Map<const CVector>(z.data(), z.size());
      }
    } else {
      throw InvalidArgument("kron_apply supports 2 or 3 factors");
    }
  }
  return y;
}

}  // namespace serial

}  // namespace eigensel::kernels
