#include "eigensel/search_space.hpp"

#include <cmath>

namespace eigensel {

namespace {

CVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v;
}

CVector orthogonalize(const CMatrix& v, CVector t) {
  if (v.cols() == 0) {
    return t;
  }
  for (int pass = 0; pass < 2; ++pass) {
    t -= v * (v.adjoint() * t);
  }
  return t;
}

}  // namespace

CMatrix rgs(const CMatrix& v, const CVector& t, std::mt19937_64& rng) {
  const Index n = t.size();
  if (v.cols() >= n) {
    return v;
  }
  CVector cand = t;
  for (int attempt = 0; attempt < 8; ++attempt) {
    const double before = cand.norm();
    const CVector q = orthogonalize(v, cand);
    const double after = q.norm();
    if (before > 0.0 && after > 1e-12 * before && q.allFinite()) {
      CMatrix out(n, v.cols() + 1);
      out.leftCols(v.cols()) = v;
      out.col(v.cols()) = q / after;
      return out;
    }
    cand = random_vector(n, rng);
  }
  throw NoProgress("rgs could not find a direction outside the current basis");
}

SearchSpace::SearchSpace(const PolyProblem& problem, std::uint64_t seed)
    : problem_(&problem), rng_(seed), v_(problem.dim(), 0) {
  const int m = problem.degree();
  w_.assign(static_cast<std::size_t>(m + 1), CMatrix(problem.dim(), 0));
  h_.assign(static_cast<std::size_t>(m + 1), CMatrix(0, 0));
}

bool SearchSpace::expand(const CVector& t) {
  const Index k = v_.cols();
  if (k >= dim()) {
    return false;
  }
  v_ = rgs(v_, t, rng_);
  const CVector vn = v_.col(k);
  for (std::size_t i = 0; i < w_.size(); ++i) {
    CMatrix& w = w_[i];
    CMatrix& h = h_[i];
    w.conservativeResize(Eigen::NoChange, k + 1);
    w.col(k) = problem_->coeff(static_cast<int>(i)).apply(vn);
    h.conservativeResize(k + 1, k + 1);
    h.col(k) = v_.adjoint() * w.col(k);
    h.row(k).head(k) = vn.adjoint() * w.leftCols(k);
  }
  return true;
}

void SearchSpace::restart(const CMatrix& c) {
  const Index k = v_.cols();
  if (c.rows() != k) {
    throw InvalidArgument("restart coefficients must have one row per basis vector");
  }
  CMatrix q(k, 0);
  for (Index j = 0; j < c.cols(); ++j) {
    CVector x = c.col(j);
    const double before = x.norm();
    x = orthogonalize(q, x);
    const double after = x.norm();
    if (before > 0.0 && after > 1e-10 * before) {
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = x / after;
    }
  }
  v_ = v_ * q;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i] = w_[i] * q;
    h_[i] = q.adjoint() * h_[i] * q;
  }
  if (orthogonality_error() > 1e-13) {
    rebuild();
  }
}

void SearchSpace::rebuild() {
  CMatrix old = v_;
  v_.resize(dim(), 0);
  for (Index j = 0; j < old.cols(); ++j) {
    v_ = rgs(v_, old.col(j), rng_);
  }
  for (std::size_t i = 0; i < w_.size(); ++i) {
    w_[i].resize(dim(), v_.cols());
    for (Index j = 0; j < v_.cols(); ++j) {
      w_[i].col(j) = problem_->coeff(static_cast<int>(i)).apply(v_.col(j));
    }
    h_[i] = v_.adjoint() * w_[i];
  }
}

double SearchSpace::orthogonality_error() const {
  if (v_.cols() == 0) {
    return 0.0;
  }
  const CMatrix g = v_.adjoint() * v_ - CMatrix::Identity(v_.cols(), v_.cols());
  return g.cwiseAbs().maxCoeff();
}

double SearchSpace::consistency_error() const {
  double err = 0.0;
  for (std::size_t i = 0; i < w_.size(); ++i) {
    CMatrix av(dim(), v_.cols());
    for (Index j = 0; j < v_.cols(); ++j) {
      av.col(j) = problem_->coeff(static_cast<int>(i)).apply(v_.col(j));
    }
    const double scale = std::max(1.0, problem_->coeff_norms()[i]);
    err = std::max(err, (av - w_[i]).norm() / scale);
    if (v_.cols() > 0) {
      err = std::max(err, (v_.adjoint() * w_[i] - h_[i]).norm() / scale);
    }
  }
  return err;
}

}  // namespace eigensel
