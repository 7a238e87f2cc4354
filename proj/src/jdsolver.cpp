#include "eigensel/jdsolver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>

#include "eigensel/dense_eig.hpp"
#include "eigensel/linsolve.hpp"

namespace eigensel {

void JdOptions::validate(Index n) {
  if (num_pairs < 1) {
    throw InvalidArgument("num_pairs must be at least 1");
  }
  if (!(tol > 0.0)) {
    throw InvalidArgument("tol must be positive");
  }
  if (!(eta_sel > 0.0 && eta_sel < 1.0)) {
    throw InvalidArgument("eta_sel must lie in (0, 1)");
  }
  if (max_outer < 1 || inner_steps < 0) {
    throw InvalidArgument("max_outer must be >= 1 and inner_steps >= 0");
  }
  if (n < 2) {
    throw InvalidArgument("jd_solve needs a problem of dimension >= 2");
  }
  maxdim = static_cast<int>(std::min<Index>(maxdim, n));
  mindim = std::min(mindim, maxdim - 1);
  if (mindim < 1 || mindim >= maxdim) {
    throw InvalidArgument("need 1 <= mindim < maxdim <= n");
  }
  if (start && start->size() != n) {
    throw InvalidArgument("start vector has the wrong dimension");
  }
}

std::string to_string(JdEvent e) {
  switch (e) {
    case JdEvent::expanded:
      return "expanded";
    case JdEvent::converged:
      return "converged";
    case JdEvent::restarted:
      return "restarted";
    case JdEvent::no_pass:
      return "no-pass";
  }
  return "unknown";
}

std::vector<Candidate> extract_candidates(const SearchSpace& space, Complex tau, SelectionMode mode) {
  std::vector<Candidate> out;
  if (space.size() == 0) {
    return out;
  }
  const PolyEig pe = polynomial_eig(space.projections(), false);
  const ProjectivePoint ptau = from_scalar(tau);
  for (std::size_t k = 0; k < pe.points.size(); ++k) {
    Candidate c;
    c.point = pe.points[k];
    c.infinite = is_infinite(c.point);
    if (c.infinite && mode == SelectionMode::standard) {
      continue;
    }
    c.theta = c.infinite ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                         : c.point.alpha / c.point.beta;
    c.c = pe.right.col(static_cast<Index>(k));
    c.v = space.basis() * c.c;
    const double nv = c.v.norm();
    if (!(nv > 0.0) || !c.v.allFinite()) {
      continue;
    }
    c.v /= nv;
    c.c /= nv;
    c.distance = mode == SelectionMode::standard ? std::abs(c.theta - tau)
                                                 : chordal_distance(c.point, ptau);
    out.push_back(std::move(c));
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const Candidate& a, const Candidate& b) { return a.distance < b.distance; });
  return out;
}

namespace {

std::vector<CMatrix> scalar_projection(const PolyProblem& problem, const CVector& v) {
  std::vector<CMatrix> h;
  for (const auto& a : problem.coeffs()) {
    h.push_back(CMatrix::Constant(1, 1, v.dot(a.apply(v))));
  }
  return h;
}

bool vanishing(const std::vector<CMatrix>& h, const PolyProblem& problem) {
  double scale = 0.0;
  double mag = 0.0;
  for (std::size_t i = 0; i < h.size(); ++i) {
    scale += problem.coeff_norms()[i];
    mag += std::abs(h[i](0, 0));
  }
  return mag <= 1e-14 * scale;
}

}  // namespace

Complex gal1_refine(const PolyProblem& problem, const CVector& v, Complex reference) {
  const auto h = scalar_projection(problem, v);
  if (vanishing(h, problem)) {
    return reference;
  }
  const PolyEig pe = polynomial_eig(h, false);
  Complex best = reference;
  double best_res = std::numeric_limits<double>::infinity();
  const double tie = 1e-12 * problem.residual_scale(reference);
  for (const auto& p : pe.points) {
    const auto val = to_finite(p);
    if (!val) {
      continue;
    }
    const double res = problem.apply(*val, v).norm();
    const bool better = res < best_res - tie;
    const bool tied = std::abs(res - best_res) <= tie &&
                      std::abs(*val - reference) < std::abs(best - reference);
    if (better || tied) {
      best = *val;
      best_res = res;
    }
  }
  return best;
}

ProjectivePoint gal1_refine(const PolyProblem& problem, const CVector& v,
                            const ProjectivePoint& reference) {
  const auto h = scalar_projection(problem, v);
  if (vanishing(h, problem)) {
    return reference;
  }
  const PolyEig pe = polynomial_eig(h, false);
  const int m = problem.degree();
  ProjectivePoint best = reference;
  double best_res = std::numeric_limits<double>::infinity();
  double scale = 0.0;
  for (double a : problem.coeff_norms()) {
    scale += a;
  }
  const double tie = 1e-12 * scale;
  for (const auto& p : pe.points) {
    const double res = problem.apply_weighted(hom_eval_weights(m, p), v).norm();
    const bool better = res < best_res - tie;
    const bool tied = std::abs(res - best_res) <= tie &&
                      chordal_distance(p, reference) < chordal_distance(best, reference);
    if (better || tied) {
      best = p;
      best_res = res;
    }
  }
  return best;
}

namespace {

CVector random_start(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

struct Evaluated {
  ProjectivePoint point;
  Complex theta;
  bool infinite = false;
  CVector r;
  double rel_residual = 0.0;
};

Evaluated evaluate(const PolyProblem& problem, const SearchSpace& space, const Candidate& cand,
                   const JdOptions& opts) {
  Evaluated e;
  e.point = cand.point;
  e.theta = cand.theta;
  e.infinite = cand.infinite;
  const int m = problem.degree();
  std::vector<Complex> w;
  double scale = 0.0;
  if (opts.mode == SelectionMode::standard) {
    if (opts.extraction == Extraction::gal1) {
      e.theta = gal1_refine(problem, cand.v, cand.theta);
      e.point = from_scalar(e.theta);
    }
    w = eval_weights(m, e.theta);
    scale = problem.residual_scale(e.theta);
  } else {
    if (opts.extraction == Extraction::gal1) {
      e.point = gal1_refine(problem, cand.v, cand.point);
      e.infinite = is_infinite(e.point);
      e.theta = e.infinite ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                           : e.point.alpha / e.point.beta;
    }
    w = hom_eval_weights(m, e.point);
    scale = hom_residual_scale(problem, e.point);
  }
  const bool refined = opts.extraction == Extraction::gal1;
  if (refined) {
    e.r = problem.apply_weighted(w, cand.v);
  } else {
    e.r = CVector::Zero(problem.dim());
    for (int i = 0; i <= m; ++i) {
      e.r += w[static_cast<std::size_t>(i)] * (space.products()[static_cast<std::size_t>(i)] * cand.c);
    }
  }
  e.rel_residual = scale > 0.0 ? e.r.norm() / scale : e.r.norm();
  return e;
}

}  // namespace

JdResult jd_solve(const PolyProblem& problem, JdOptions opts) {
  const Index n = problem.dim();
  opts.validate(n);
  SelectionConfig cfg;
  cfg.eta_sel = opts.eta_sel;
  cfg.mode = opts.mode;
  Registry registry(problem, cfg);
  SearchSpace space(problem, opts.seed + 17);
  JdResult result;

  std::optional<Preconditioner> precond;
  if (opts.precondition) {
    precond = lu_preconditioner(problem, opts.target);
  }
  const Preconditioner* mp = precond ? &*precond : nullptr;
  const double left_eps = std::max(opts.tol, 1e-12);
  const int m = problem.degree();

  CVector t = opts.start ? CVector(*opts.start / opts.start->norm()) : random_start(n, opts.seed);
  std::mt19937_64 rng(opts.seed + 101);

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    result.outer_iterations = outer;
    if (!space.expand(t)) {
      throw NoProgress("search space cannot be expanded further");
    }
    std::vector<Candidate> cands = extract_candidates(space, opts.target, opts.mode);
    if (cands.empty()) {
      t = random_start(n, rng());
      result.records.push_back({outer, {}, Complex(0.0), false, 0.0, 0.0, JdEvent::no_pass});
      continue;
    }
    auto pairs_of = [&](const std::vector<Candidate>& cs) {
      std::vector<CandidatePair> ps;
      ps.reserve(cs.size());
      for (const auto& c : cs) {
        CandidatePair p;
        p.theta = c.theta;
        p.point = c.point;
        p.infinite = c.infinite;
        p.v = c.v;
        ps.push_back(std::move(p));
      }
      return ps;
    };
    RVector crit = registry.criterion_values(pairs_of(cands), opts.backend);
    std::vector<bool> blocked(cands.size(), false);

    std::size_t chosen = 0;
    bool passing = false;
    Evaluated ev;
    bool done = false;
    while (true) {
      passing = false;
      chosen = 0;
      for (std::size_t i = 0; i < cands.size(); ++i) {
        if (!blocked[i] && crit(static_cast<Index>(i)) < opts.eta_sel) {
          chosen = i;
          passing = true;
          break;
        }
      }
      ev = evaluate(problem, space, cands[chosen], opts);
      if (!passing) {
        // An already converged pair has a vanishing correction; expand with
        // the nearest pair that still has something to contribute.
        for (std::size_t i = 0; i < cands.size() && ev.rel_residual <= opts.tol; ++i) {
          Evaluated alt = evaluate(problem, space, cands[i], opts);
          if (alt.rel_residual > opts.tol) {
            chosen = i;
            ev = std::move(alt);
          }
        }
        break;
      }
      if (ev.rel_residual > opts.tol) {
        break;
      }
      // converged and selected: compute the left vector and register
      try {
        const NullVectorResult left = opts.mode == SelectionMode::standard
                                          ? left_eigenvector(problem, ev.theta, left_eps, opts.seed + outer)
                                          : left_eigenvector(problem, ev.point, left_eps, opts.seed + outer);
        if (opts.mode == SelectionMode::standard) {
          registry.register_triplet(ev.theta, cands[chosen].v, left.y, ev.rel_residual, outer);
        } else {
          registry.register_triplet(ev.point, cands[chosen].v, left.y, ev.rel_residual, outer);
        }
        result.records.push_back({outer, ev.point, ev.theta, ev.infinite, ev.rel_residual,
                                  crit(static_cast<Index>(chosen)), JdEvent::converged});
      } catch (const Error& err) {
        result.warnings.push_back("iteration " + std::to_string(outer) + ": triplet skipped (" +
                                  err.what() + ")");
        blocked[chosen] = true;
        continue;
      }
      if (static_cast<int>(registry.size()) >= opts.num_pairs) {
        done = true;
        break;
      }
      crit = registry.criterion_values(pairs_of(cands), opts.backend);
    }
    if (done) {
      break;
    }
    result.records.push_back({outer, ev.point, ev.theta, ev.infinite, ev.rel_residual,
                              crit(static_cast<Index>(chosen)),
                              passing ? JdEvent::expanded : JdEvent::no_pass});

    const CVector v = cands[chosen].v;
    if (space.size() >= opts.maxdim) {
      std::vector<std::size_t> order{chosen};
      for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t i = 0; i < cands.size(); ++i) {
          const bool ok = crit(static_cast<Index>(i)) < opts.eta_sel && !blocked[i];
          if (i != chosen && ok == (pass == 0)) {
            order.push_back(i);
          }
        }
      }
      const auto keep = std::min<std::size_t>(order.size(), static_cast<std::size_t>(opts.mindim));
      CMatrix c(space.size(), static_cast<Index>(keep));
      for (std::size_t j = 0; j < keep; ++j) {
        c.col(static_cast<Index>(j)) = cands[order[j]].c;
      }
      space.restart(c);
      result.records.push_back({outer, ev.point, ev.theta, ev.infinite, ev.rel_residual,
                                crit(static_cast<Index>(chosen)), JdEvent::restarted});
    }

    if (opts.mode == SelectionMode::standard) {
      t = projected_correction_solve(problem, ev.theta, v, ev.r, opts.inner_steps, mp);
    } else {
      const auto we = hom_eval_weights(m, ev.point);
      const auto wd = hom_D_weights(m, ev.point);
      LinearOperator op{n, [&](const CVector& x) { return problem.apply_weighted(we, x); }};
      const CVector u = problem.apply_weighted(wd, v);
      t = jd_correction(op, u, v, ev.r, opts.inner_steps, mp);
    }
    if (!t.allFinite() || t.norm() == 0.0) {
      t = random_start(n, rng());
    }
  }

  result.triplets = registry.triplets();
  result.truncated = static_cast<int>(result.triplets.size()) < opts.num_pairs;
  return result;
}

void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records) {
  os << "iteration,re_theta,im_theta,residual,criterion,event\n";
  os << std::setprecision(17);
  for (const auto& r : records) {
    os << r.iteration << ',';
    if (r.infinite) {
      os << "inf,inf,";
    } else {
      os << r.theta.real() << ',' << r.theta.imag() << ',';
    }
    os << r.residual << ',' << r.criterion << ',' << to_string(r.event) << '\n';
  }
}

}  // namespace eigensel
