#include "eigensel/dense_eig.hpp"

#include <string>

#include <complex>
#define LAPACK_COMPLEX_CPP
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace eigensel {

GeneralizedEig generalized_eig(const CMatrix& a, const CMatrix& b, bool want_left, bool want_right) {
  const Index n = a.rows();
  if (a.cols() != n || b.rows() != n || b.cols() != n) {
    throw InvalidArgument("generalized_eig: A and B must be square of equal size");
  }
  GeneralizedEig out;
  out.alpha.resize(n);
  out.beta.resize(n);
  if (n == 0) {
    return out;
  }
  CMatrix aa = a;
  CMatrix bb = b;
  out.left.resize(want_left ? n : 1, want_left ? n : 1);
  out.right.resize(want_right ? n : 1, want_right ? n : 1);
  const lapack_int ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zggev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', ln, aa.data(), ln, bb.data(),
      ln, out.alpha.data(), out.beta.data(), out.left.data(), static_cast<lapack_int>(out.left.rows()),
      out.right.data(), static_cast<lapack_int>(out.right.rows()));
  if (info != 0) {
    throw Error("zggev failed with info = " + std::to_string(info));
  }
  if (!want_left) {
    out.left.resize(0, 0);
  }
  if (!want_right) {
    out.right.resize(0, 0);
  }
  return out;
}

StandardEig standard_eig(const CMatrix& a, bool want_left, bool want_right) {
  const Index n = a.rows();
  if (a.cols() != n) {
    throw InvalidArgument("standard_eig: matrix must be square");
  }
  StandardEig out;
  out.values.resize(n);
  if (n == 0) {
    return out;
  }
  CMatrix aa = a;
  out.left.resize(want_left ? n : 1, want_left ? n : 1);
  out.right.resize(want_right ? n : 1, want_right ? n : 1);
  const lapack_int ln = static_cast<lapack_int>(n);
  const lapack_int info = LAPACKE_zgeev(
      LAPACK_COL_MAJOR, want_left ? 'V' : 'N', want_right ? 'V' : 'N', ln, aa.data(), ln,
      out.values.data(), out.left.data(), static_cast<lapack_int>(out.left.rows()), out.right.data(),
      static_cast<lapack_int>(out.right.rows()));
  if (info != 0) {
    throw Error("zgeev failed with info = " + std::to_string(info));
  }
  if (!want_left) {
    out.left.resize(0, 0);
  }
  if (!want_right) {
    out.right.resize(0, 0);
  }
  return out;
}

PolyEig polynomial_eig(const std::vector<CMatrix>& coeffs, bool want_left) {
  if (coeffs.size() < 2) {
    throw InvalidArgument("polynomial_eig needs degree >= 1");
  }
  const int m = static_cast<int>(coeffs.size()) - 1;
  const Index n = coeffs.front().rows();
  const Index big = n * m;
  CMatrix a = CMatrix::Zero(big, big);
  CMatrix b = CMatrix::Identity(big, big);
  for (int i = 0; i + 1 < m; ++i) {
    a.block(i * n, (i + 1) * n, n, n).setIdentity();
  }
  for (int i = 0; i < m; ++i) {
    a.block((m - 1) * n, i * n, n, n) = -coeffs[static_cast<std::size_t>(i)];
  }
  b.block((m - 1) * n, (m - 1) * n, n, n) = coeffs.back();

  const GeneralizedEig ge = generalized_eig(a, b, want_left, true);
  PolyEig out;
  out.right.resize(n, big);
  if (want_left) {
    out.left.resize(n, big);
  }
  for (Index k = 0; k < big; ++k) {
    ProjectivePoint p;
    const double na = std::abs(ge.alpha(k));
    const double nb = std::abs(ge.beta(k));
    if (na == 0.0 && nb == 0.0) {
      throw Error("polynomial_eig: singular pencil (alpha = beta = 0)");
    }
    p = scale_canonical(normalized_point(ge.alpha(k), ge.beta(k)));
    out.points.push_back(p);

    Index best = m - 1;
    if (!is_infinite(p)) {
      double best_norm = -1.0;
      for (int i = 0; i < m; ++i) {
        const double nrm = ge.right.col(k).segment(i * n, n).norm();
        if (nrm > best_norm) {
          best_norm = nrm;
          best = i;
        }
      }
    }
    CVector x = ge.right.col(k).segment(best * n, n);
    out.right.col(k) = x / x.norm();
    if (want_left) {
      CVector y = ge.left.col(k).segment((m - 1) * n, n);
      const double ny = y.norm();
      out.left.col(k) = ny > 0.0 ? CVector(y / ny) : y;
    }
  }
  return out;
}

}  // namespace eigensel
