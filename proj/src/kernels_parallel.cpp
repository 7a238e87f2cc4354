#include <cmath>

#include "eigensel/kernels.hpp"

#ifdef EIGENSEL_HAVE_OPENMP
#include <omp.h>
#endif

namespace eigensel::kernels {

bool parallel_available() {
#ifdef EIGENSEL_HAVE_OPENMP
  return true;
#else
  return false;
#endif
}

int max_threads() {
#ifdef EIGENSEL_HAVE_OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

namespace parallel {

CMatrix combine(const std::vector<Complex>& weights, const std::vector<const CMatrix*>& mats) {
  if (mats.empty()) {
    return {};
  }
  const Index rows = mats.front()->rows();
  const Index cols = mats.front()->cols();
  CMatrix out = CMatrix::Zero(rows, cols);
  const std::size_t nm = mats.size();
#pragma omp parallel for schedule(static)
  for (Index c = 0; c < cols; ++c) {
    for (std::size_t j = 0; j < nm; ++j) {
      if (weights[j] == Complex(0.0)) {
        continue;
      }
      out.col(c) += weights[j] * mats[j]->col(c);
    }
  }
  return out;
}

RVector selection_values(const std::vector<CMatrix>& left, const CMatrix& cands,
                         const std::vector<CMatrix>& weights, const CVector& denom) {
  const Index nc = cands.cols();
  const Index d = denom.size();
  RVector out = RVector::Zero(nc);
  if (d == 0) {
    return out;
  }
  const std::size_t nj = left.size();
#pragma omp parallel for schedule(dynamic)
  for (Index c = 0; c < nc; ++c) {
    CVector num = CVector::Zero(d);
    for (std::size_t j = 0; j < nj; ++j) {
      num += weights[j].col(c).cwiseProduct(left[j] * cands.col(c));
    }
    out(c) = num.cwiseAbs().cwiseQuotient(denom.cwiseAbs()).maxCoeff();
  }
  return out;
}

RVector mep_selection_values(const std::vector<std::vector<CMatrix>>& left,
                             const std::vector<CMatrix>& cands, const CVector& denom) {
  const Index k = static_cast<Index>(left.size());
  const Index nc = cands.empty() ? 0 : cands.front().cols();
  const Index d = denom.size();
  RVector out = RVector::Zero(nc);
  if (d == 0) {
    return out;
  }
#pragma omp parallel for schedule(dynamic)
  for (Index c = 0; c < nc; ++c) {
    // products[i][j] holds (left[i][j] * cands[i].col(c)) for every registered r
    std::vector<std::vector<CVector>> products(k, std::vector<CVector>(k));
    for (Index i = 0; i < k; ++i) {
      for (Index j = 0; j < k; ++j) {
        products[i][j] = left[i][j] * cands[i].col(c);
      }
    }
    CMatrix s(k, k);
    double best = 0.0;
    for (Index r = 0; r < d; ++r) {
      for (Index i = 0; i < k; ++i) {
        for (Index j = 0; j < k; ++j) {
          s(i, j) = products[i][j](r);
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
  Index out_size = 1;
  for (const CMatrix* m : terms.front().factors) {
    out_size *= m->rows();
  }
  CVector y = CVector::Zero(out_size);
  for (const KronTerm& t : terms) {
    if (t.factors.size() == 2) {
      const CMatrix& m1 = *t.factors[0];
      const CMatrix& m2 = *t.factors[1];
      Eigen::Map<const CMatrix> xm(x.data(), m2.cols(), m1.cols());
      const CMatrix tmp = m2 * xm;  // r2 x n1
      const Index r2 = m2.rows();
#pragma omp parallel for schedule(static)
      for (Index i1 = 0; i1 < m1.rows(); ++i1) {
        y.segment(i1 * r2, r2) += t.coeff * (tmp * m1.row(i1).transpose());
      }
    } else if (t.factors.size() == 3) {
      const CMatrix& m1 = *t.factors[0];
      const CMatrix& m2 = *t.factors[1];
      const CMatrix& m3 = *t.factors[2];
      const Index n1 = m1.cols();
      const Index n23 = m2.cols() * m3.cols();
      Eigen::Map<const CMatrix> xm(x.data(), n23, n1);
      const CMatrix mode1 = xm * m1.transpose();
      const Index r23 = m2.rows() * m3.rows();
#pragma omp parallel for schedule(static)
      for (Index i1 = 0; i1 < m1.rows(); ++i1) {
        Eigen::Map<const CMatrix> slice(mode1.col(i1).data(), m3.cols(), m2.cols());
        const CMatrix z = m3 * slice * m2.transpose();
        y.segment(i1 * r23, r23) += t.coeff * Eigen::Map<const CVector>(z.data(), z.size());
      }
    } else {
      throw InvalidArgument("kron_apply supports 2 or 3 factors");
    }
  }
  return y;
}

}  // namespace parallel

}  // namespace eigensel::kernels
