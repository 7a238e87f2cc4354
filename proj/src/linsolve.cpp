#include "eigensel/linsolve.hpp"

#include <cmath>
#include <limits>
#include <memory>
#include <random>

#include <Eigen/SparseLU>

namespace eigensel {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

CVector random_unit(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

void givens(Complex a, Complex b, double& c, Complex& s) {
  const double na = std::abs(a);
  const double nb = std::abs(b);
  if (nb == 0.0) {
    c = 1.0;
    s = 0.0;
    return;
  }
  if (na == 0.0) {
    c = 0.0;
    s = std::conj(b) / nb;
    return;
  }
  const double r = std::hypot(na, nb);
  c = na / r;
  s = (a / na) * std::conj(b) / r;
}

}  // namespace

LinearOperator dense_operator(const CMatrix& a) {
  auto shared = std::make_shared<CMatrix>(a);
  return {a.rows(), [shared](const CVector& x) -> CVector { return (*shared) * x; }};
}

Preconditioner identity_preconditioner(Index n) {
  return {n, [](const CVector& x) { return x; }};
}

Preconditioner lu_preconditioner(const CMatrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument("lu_preconditioner needs a square matrix");
  }
  auto lu = std::make_shared<Eigen::PartialPivLU<CMatrix>>(a);
  const auto pivots = lu->matrixLU().diagonal().cwiseAbs();
  const double rc = pivots.size() == 0 ? 1.0 : std::min(lu->rcond(), pivots.minCoeff() / pivots.maxCoeff());
  if (!(rc > kEps)) {
    throw SingularShift("P(tau) is singular to working precision (rcond " + std::to_string(rc) +
                        "); choose a shifted target");
  }
  return {a.rows(), [lu](const CVector& x) -> CVector { return lu->solve(x); }};
}

Preconditioner lu_preconditioner(const SparseCMatrix& a) {
  if (a.rows() != a.cols()) {
    throw InvalidArgument("lu_preconditioner needs a square matrix");
  }
  auto lu = std::make_shared<Eigen::SparseLU<SparseCMatrix, Eigen::COLAMDOrdering<int>>>();
  SparseCMatrix copy = a;
  copy.makeCompressed();
  lu->compute(copy);
  if (lu->info() != Eigen::Success) {
    throw SingularShift("sparse LU of P(tau) failed; choose a shifted target");
  }
  // SparseLU accepts tiny pivots; reject them like the dense path does.
  const CVector probe = CVector::Ones(a.rows()) / std::sqrt(static_cast<double>(a.rows()));
  const CVector z = lu->solve(probe);
  double anorm = 0.0;
  for (Index k = 0; k < copy.outerSize(); ++k) {
    double col = 0.0;
    for (SparseCMatrix::InnerIterator it(copy, k); it; ++it) {
      col += std::abs(it.value());
    }
    anorm = std::max(anorm, col);
  }
  if (!z.allFinite() || z.norm() * anorm * kEps > 1.0) {
    throw SingularShift("P(tau) is singular to working precision; choose a shifted target");
  }
  return {a.rows(), [lu](const CVector& x) -> CVector { return lu->solve(x); }};
}

Preconditioner lu_preconditioner(const PolyProblem& problem, Complex tau) {
  if (problem.any_sparse()) {
    return lu_preconditioner(problem.eval_sparse(tau));
  }
  return lu_preconditioner(problem.eval(tau));
}

Preconditioner lu_preconditioner(const NepProblem& problem, Complex tau) {
  if (const auto* poly = dynamic_cast<const PolyProblem*>(&problem)) {
    return lu_preconditioner(*poly, tau);
  }
  return lu_preconditioner(problem.eval(tau));
}

GmresResult gmres(const LinearOperator& a, const CVector& b, const CVector& x0, double tol, int maxit,
                  const Preconditioner* m) {
  if (!(tol > 0.0) || maxit < 1) {
    throw InvalidArgument("gmres needs tol > 0 and maxit >= 1");
  }
  const Index n = b.size();
  GmresResult res;
  res.x = x0.size() == n ? x0 : CVector::Zero(n);
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    res.x.setZero();
    res.converged = true;
    return res;
  }
  const CVector r0 = b - a.apply(res.x);
  const double beta = r0.norm();
  res.residual = beta / bnorm;
  if (res.residual <= tol) {
    res.converged = true;
    return res;
  }
  const int kmax = static_cast<int>(std::min<Index>(maxit, n));
  CMatrix v(n, kmax + 1);
  CMatrix z(n, kmax);
  CMatrix h = CMatrix::Zero(kmax + 1, kmax);
  std::vector<double> cs(static_cast<std::size_t>(kmax));
  std::vector<Complex> sn(static_cast<std::size_t>(kmax));
  CVector g = CVector::Zero(kmax + 1);
  g(0) = beta;
  v.col(0) = r0 / beta;
  int k = 0;
  for (; k < kmax; ++k) {
    z.col(k) = m != nullptr ? m->solve(v.col(k)) : CVector(v.col(k));
    CVector w = a.apply(z.col(k));
    const double wnorm0 = w.norm();
    for (int pass = 0; pass < 2; ++pass) {
      for (int i = 0; i <= k; ++i) {
        const Complex hij = v.col(i).dot(w);
        h(i, k) += hij;
        w -= hij * v.col(i);
      }
    }
    const double hn = w.norm();
    h(k + 1, k) = hn;
    const bool breakdown = hn <= 1e-14 * std::max(wnorm0, 1e-300);
    if (!breakdown) {
      v.col(k + 1) = w / hn;
    }
    for (int i = 0; i < k; ++i) {
      const Complex t = cs[static_cast<std::size_t>(i)] * h(i, k) + sn[static_cast<std::size_t>(i)] * h(i + 1, k);
      h(i + 1, k) = -std::conj(sn[static_cast<std::size_t>(i)]) * h(i, k) + cs[static_cast<std::size_t>(i)] * h(i + 1, k);
      h(i, k) = t;
    }
    givens(h(k, k), h(k + 1, k), cs[static_cast<std::size_t>(k)], sn[static_cast<std::size_t>(k)]);
    const double c = cs[static_cast<std::size_t>(k)];
    const Complex s = sn[static_cast<std::size_t>(k)];
    h(k, k) = c * h(k, k) + s * h(k + 1, k);
    h(k + 1, k) = 0.0;
    g(k + 1) = -std::conj(s) * g(k);
    g(k) = c * g(k);
    res.residual = std::abs(g(k + 1)) / bnorm;
    res.history.push_back(res.residual);
    if (res.residual <= tol || breakdown) {
      ++k;
      break;
    }
  }
  res.iterations = k;
  if (k > 0) {
    const CVector y = h.topLeftCorner(k, k).triangularView<Eigen::Upper>().solve(g.head(k));
    res.x += z.leftCols(k) * y;
  }
  res.converged = res.residual <= tol;
  return res;
}

CVector jd_correction(const LinearOperator& a, const CVector& u, const CVector& v, const CVector& r,
                      int steps, const Preconditioner* m, std::vector<double>* history) {
  const Index n = v.size();
  auto orth = [&](CVector t) {
    t -= v * v.dot(t);
    t -= v * v.dot(t);
    return t;
  };
  auto msolve = [&](const CVector& x) -> CVector { return m != nullptr ? m->solve(x) : x; };

  const Complex vu = v.dot(u);
  const CVector mu = msolve(u);
  const Complex vmu = v.dot(mu);
  const double unorm = u.norm();
  if (r.norm() == 0.0) {
    return CVector::Zero(n);
  }
  if (std::abs(vu) <= 1e-12 * unorm || std::abs(vmu) <= 1e-12 * mu.norm()) {
    return orth(-msolve(r));
  }
  LinearOperator op{n, [&](const CVector& t) -> CVector {
                      CVector w = a.apply(t);
                      return w - u * (v.dot(w) / vu);
                    }};
  Preconditioner pm{n, [&](const CVector& y) -> CVector {
                      const CVector my = msolve(y);
                      return my - mu * (v.dot(my) / vmu);
                    }};
  const CVector rhs = -(r - u * (v.dot(r) / vu));
  const GmresResult g = gmres(op, rhs, CVector::Zero(n), 1e-14, std::max(steps, 1), &pm);
  if (history != nullptr) {
    *history = g.history;
  }
  return orth(g.x);
}

CVector projected_correction_solve(const PolyProblem& problem, Complex theta, const CVector& v,
                                   const CVector& r, int steps, const Preconditioner* m,
                                   std::vector<double>* history) {
  const CVector vn = v / v.norm();
  const CVector u = problem.apply_derivative(theta, vn);
  LinearOperator a{problem.dim(), [&](const CVector& x) { return problem.apply(theta, x); }};
  return jd_correction(a, u, vn, r, steps, m, history);
}

NullVectorResult null_vector(const LinearOperator& z, const CVector& y0, double eps,
                             const InnerSolve& inner, std::uint64_t seed) {
  if (y0.norm() == 0.0) {
    throw InvalidArgument("null_vector needs a nonzero starting vector");
  }
  std::mt19937_64 rng(seed);
  NullVectorResult best;
  best.residual = std::numeric_limits<double>::infinity();
  CVector start = y0 / y0.norm();
  int restarts = 0;
  int refinements = 0;
  while (true) {
    const CVector zy0 = z.apply(start);
    const double s = zy0.norm();
    if (s <= eps) {
      best.y = start;
      best.residual = s;
      best.converged = true;
      best.restarts = restarts;
      return best;
    }
    const CVector b = zy0 / s;
    const CVector x = inner(b);
    CVector d = x - start / s;
    const double dn = d.norm();
    if (!(dn > 1e-14 * std::max(x.norm(), 1.0 / s)) || !d.allFinite()) {
      if (++restarts > 3) {
        if (best.y.size() > 0) {
          return best;
        }
        throw NoProgress("null_vector: inner solve reproduces y0; no null-space component found");
      }
      start = random_unit(z.n, rng);
      continue;
    }
    CVector y = d / dn;
    const double res = z.apply(y).norm();
    if (res < best.residual) {
      best.y = y;
      best.residual = res;
    }
    best.restarts = restarts;
    if (res <= eps) {
      best.converged = true;
      return best;
    }
    if (++refinements > 3) {
      return best;
    }
    start = y;
  }
}

NullVectorResult null_vector(const LinearOperator& z, const CVector& y0, double eps,
                             const Preconditioner* m, std::uint64_t seed) {
  const int maxit = static_cast<int>(std::min<Index>(z.n + 10, 1000));
  InnerSolve inner = [&](const CVector& b) { return gmres(z, b, CVector::Zero(z.n), eps, maxit, m).x; };
  return null_vector(z, y0, eps, inner, seed);
}

namespace {

NullVectorResult shifted_left_null(const PolyProblem& problem, const std::vector<Complex>& w,
                                   double scale, double eps, std::uint64_t seed) {
  const Index n = problem.dim();
  const double abs_eps = eps * scale;
  const double delta = 1e-3 * std::max(eps, 1e-13) * scale;
  std::mt19937_64 rng(seed);
  const CVector y0 = random_unit(n, rng);
  // Z = P^H = sum conj(w_i) A_i^H
  LinearOperator zop{n, [&](const CVector& x) { return problem.apply_weighted_adjoint(w, x); }};
  if (problem.any_sparse()) {
    SparseCMatrix zt = SparseCMatrix(problem.combine_sparse(w).adjoint());
    SparseCMatrix id(n, n);
    id.setIdentity();
    zt += Complex(delta) * id;
    zt.makeCompressed();
    auto lu = std::make_shared<Eigen::SparseLU<SparseCMatrix, Eigen::COLAMDOrdering<int>>>();
    lu->compute(zt);
    if (lu->info() != Eigen::Success) {
      throw SingularShift("left_eigenvector: shifted sparse factorization failed");
    }
    return null_vector(zop, y0, abs_eps, [lu](const CVector& b) -> CVector { return lu->solve(b); },
                       seed + 1);
  }
  CMatrix zt = problem.combine(w).adjoint();
  zt.diagonal().array() += delta;
  auto lu = std::make_shared<Eigen::PartialPivLU<CMatrix>>(zt);
  return null_vector(zop, y0, abs_eps, [lu](const CVector& b) -> CVector { return lu->solve(b); },
                     seed + 1);
}

}  // namespace

NullVectorResult left_eigenvector(const PolyProblem& problem, Complex lambda, double eps,
                                  std::uint64_t seed) {
  return shifted_left_null(problem, eval_weights(problem.degree(), lambda),
                           problem.residual_scale(lambda), eps, seed);
}

NullVectorResult left_eigenvector(const PolyProblem& problem, const ProjectivePoint& p, double eps,
                                  std::uint64_t seed) {
  return shifted_left_null(problem, hom_eval_weights(problem.degree(), p),
                           hom_residual_scale(problem, p), eps, seed);
}

}  // namespace eigensel
