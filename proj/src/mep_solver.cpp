#include "eigensel/mep_solver.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numeric>
#include <random>

#include "eigensel/linsolve.hpp"
#include "eigensel/search_space.hpp"

namespace eigensel {

void MepOptions::validate(const LinearMep& mep) {
  const int k = mep.k();
  if (target.empty()) {
    target.assign(static_cast<std::size_t>(k), Complex(0.0));
  }
  if (static_cast<int>(target.size()) != k) {
    throw InvalidArgument("target needs one coordinate per parameter");
  }
  if (num_pairs < 1) {
    throw InvalidArgument("num_pairs must be positive");
  }
  if (!(tol > 0.0) || !(eta_sel > 0.0) || !(eta_sel < 1.0)) {
    throw InvalidArgument("tol must be positive and eta_sel in (0, 1)");
  }
  if (mindim < 1 || maxdim <= mindim || max_outer < 1 || inner_steps < 0) {
    throw InvalidArgument("need 1 <= mindim < maxdim, max_outer >= 1, inner_steps >= 0");
  }
  Index smallest = mep.n(0);
  for (int i = 1; i < k; ++i) {
    smallest = std::min(smallest, mep.n(i));
  }
  maxdim = static_cast<int>(std::min<Index>(maxdim, smallest));
  mindim = std::max(1, std::min(mindim, maxdim - 1));
  if (start) {
    if (static_cast<int>(start->size()) != k) {
      throw InvalidArgument("start needs one vector per factor");
    }
    for (int i = 0; i < k; ++i) {
      const CVector& s = (*start)[static_cast<std::size_t>(i)];
      if (s.size() != mep.n(i) || !(s.norm() > 0.0)) {
        throw InvalidArgument("start vectors must match the factor sizes and be nonzero");
      }
    }
  }
}

namespace {

CVector random_vector(Index n, std::mt19937_64& rng) {
  std::normal_distribution<double> nd(0.0, 1.0);
  CVector v(n);
  for (Index i = 0; i < n; ++i) {
    const double re = nd(rng);
    const double im = nd(rng);
    v(i) = Complex(re, im);
  }
  return v / v.norm();
}

struct TensorCandidate {
  std::vector<Complex> value;
  std::vector<CVector> c;  // projected factors
  std::vector<CVector> v;  // U_i c_i, unit
  double distance = 0.0;
};

struct Evaluated {
  std::vector<CVector> r;
  double rel_residual = 0.0;
};

LinearMep project(const LinearMep& mep, const std::vector<CMatrix>& u) {
  const int k = mep.k();
  std::vector<CMatrix> a;
  std::vector<std::vector<CMatrix>> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    const CMatrix& ui = u[static_cast<std::size_t>(i)];
    a.push_back(ui.adjoint() * mep.a(i) * ui);
    for (int j = 0; j < k; ++j) {
      c[static_cast<std::size_t>(i)].push_back(ui.adjoint() * mep.c(i, j) * ui);
    }
  }
  return LinearMep(std::move(a), std::move(c));
}

double distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  double s = 0.0;
  for (std::size_t j = 0; j < a.size(); ++j) {
    s += std::norm(a[j] - b[j]);
  }
  return std::sqrt(s);
}

Evaluated evaluate(const LinearMep& mep, const TensorCandidate& cand) {
  Evaluated ev;
  for (int i = 0; i < mep.k(); ++i) {
    const auto ii = static_cast<std::size_t>(i);
    ev.r.push_back(mep.pencil(i, cand.value) * cand.v[ii]);
    ev.rel_residual = std::max(ev.rel_residual, ev.r[ii].norm() / mep.pencil_scale(i, cand.value));
  }
  return ev;
}

/// Orthonormal basis of the columns of c; columns below 1e-10 after two
/// Gram-Schmidt passes are dropped.
CMatrix orthonormal_columns(const CMatrix& c) {
  CMatrix q(c.rows(), 0);
  for (Index j = 0; j < c.cols(); ++j) {
    CVector x = c.col(j);
    const double nx = x.norm();
    for (int pass = 0; pass < 2; ++pass) {
      x -= q * (q.adjoint() * x);
    }
    if (x.norm() > 1e-10 * nx) {
      q.conservativeResize(Eigen::NoChange, q.cols() + 1);
      q.col(q.cols() - 1) = x / x.norm();
    }
  }
  return q;
}

}  // namespace

MepResult mep_subspace_solve(const LinearMep& mep, MepOptions opts) {
  opts.validate(mep);
  const int k = mep.k();
  const auto kk = static_cast<std::size_t>(k);
  MepResult result;
  std::vector<MepTriplet> registry;
  std::mt19937_64 rng(opts.seed + 101);

  std::vector<Preconditioner> precond;
  if (opts.precondition) {
    for (int i = 0; i < k; ++i) {
      precond.push_back(lu_preconditioner(mep.pencil(i, opts.target)));
    }
  }

  std::vector<CMatrix> u(kk);
  std::vector<CVector> t(kk);
  for (int i = 0; i < k; ++i) {
    const auto ii = static_cast<std::size_t>(i);
    u[ii].resize(mep.n(i), 0);
    t[ii] = opts.start ? CVector((*opts.start)[ii] / (*opts.start)[ii].norm())
                       : random_vector(mep.n(i), rng);
  }

  auto criterion_of = [&](const std::vector<TensorCandidate>& cs) -> RVector {
    if (opts.strict) {
      RVector out(static_cast<Index>(cs.size()));
      for (std::size_t c = 0; c < cs.size(); ++c) {
        // mapped onto the same scale as the ratio test: 0 passes, 1 fails
        out(static_cast<Index>(c)) =
            mep_passes_strict(registry, {cs[c].value, cs[c].v}, mep) ? 0.0 : 1.0;
      }
      return out;
    }
    std::vector<CMatrix> factors(kk);
    for (int i = 0; i < k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      factors[ii].resize(mep.n(i), static_cast<Index>(cs.size()));
      for (std::size_t c = 0; c < cs.size(); ++c) {
        factors[ii].col(static_cast<Index>(c)) = cs[c].v[ii];
      }
    }
    return mep_criterion_values(registry, factors, mep, opts.backend);
  };

  for (int outer = 1; outer <= opts.max_outer; ++outer) {
    result.outer_iterations = outer;
    for (int i = 0; i < k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      if (u[ii].cols() < mep.n(i)) {
        u[ii] = rgs(u[ii], t[ii], rng);
      }
    }

    std::vector<MepTriplet> projected;
    try {
      projected = dense_solve(project(mep, u), 0);
    } catch (const DegenerateConfiguration&) {
      result.warnings.push_back("iteration " + std::to_string(outer) +
                                ": projected problem singular, expanding randomly");
      for (int i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = random_vector(mep.n(i), rng);
      }
      result.records.push_back({outer, {}, 0.0, 0.0, JdEvent::no_pass});
      continue;
    }

    std::vector<TensorCandidate> cands;
    for (auto& p : projected) {
      if (p.flagged) {
        continue;
      }
      TensorCandidate c;
      c.value = p.value;
      c.c = p.right;
      for (int i = 0; i < k; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        CVector v = u[ii] * p.right[ii];
        c.v.push_back(v / v.norm());
      }
      c.distance = distance(c.value, opts.target);
      cands.push_back(std::move(c));
    }
    if (cands.empty()) {
      for (int i = 0; i < k; ++i) {
        t[static_cast<std::size_t>(i)] = random_vector(mep.n(i), rng);
      }
      result.records.push_back({outer, {}, 0.0, 0.0, JdEvent::no_pass});
      continue;
    }
    std::stable_sort(cands.begin(), cands.end(),
                     [](const TensorCandidate& a, const TensorCandidate& b) {
                       return a.distance < b.distance;
                     });

    RVector crit = criterion_of(cands);
    std::vector<bool> blocked(cands.size(), false);
    std::size_t chosen = 0;
    bool passing = false;
    bool done = false;
    Evaluated ev;
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
      ev = evaluate(mep, cands[chosen]);
      if (!passing) {
        for (std::size_t i = 0; i < cands.size() && ev.rel_residual <= opts.tol; ++i) {
          Evaluated alt = evaluate(mep, cands[i]);
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
      MepTriplet trip;
      trip.value = cands[chosen].value;
      trip.right = cands[chosen].v;
      trip.iteration = outer;
      mep_complete_triplet(mep, trip);
      if (!(std::abs(trip.denom) > 0.0)) {
        result.warnings.push_back("iteration " + std::to_string(outer) +
                                  ": triplet skipped (vanishing denominator)");
        blocked[chosen] = true;
        continue;
      }
      registry.push_back(trip);
      result.records.push_back({outer, trip.value, trip.residual, crit(static_cast<Index>(chosen)),
                                JdEvent::converged});
      if (static_cast<int>(registry.size()) >= opts.num_pairs) {
        done = true;
        break;
      }
      crit = criterion_of(cands);
    }
    if (done) {
      break;
    }
    result.records.push_back({outer, cands[chosen].value, ev.rel_residual,
                              crit(static_cast<Index>(chosen)),
                              passing ? JdEvent::expanded : JdEvent::no_pass});

    const TensorCandidate sel = cands[chosen];
    Index largest = 0;
    for (const auto& ui : u) {
      largest = std::max(largest, ui.cols());
    }
    if (largest >= opts.maxdim) {
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
      for (int i = 0; i < k; ++i) {
        const auto ii = static_cast<std::size_t>(i);
        CMatrix c(u[ii].cols(), static_cast<Index>(keep));
        for (std::size_t j = 0; j < keep; ++j) {
          c.col(static_cast<Index>(j)) = cands[order[j]].c[ii];
        }
        u[ii] = u[ii] * orthonormal_columns(c);
      }
      result.records.push_back({outer, sel.value, ev.rel_residual,
                                crit(static_cast<Index>(chosen)), JdEvent::restarted});
    }

    for (int i = 0; i < k; ++i) {
      const auto ii = static_cast<std::size_t>(i);
      const CMatrix w = mep.pencil(i, sel.value);
      LinearOperator op{mep.n(i), [&w](const CVector& x) -> CVector { return w * x; }};
      const Preconditioner* mp = opts.precondition ? &precond[ii] : nullptr;
      t[ii] = jd_correction(op, sel.v[ii], sel.v[ii], ev.r[ii], opts.inner_steps, mp);
      if (!t[ii].allFinite() || t[ii].norm() == 0.0) {
        t[ii] = random_vector(mep.n(i), rng);
      }
    }
  }

  result.triplets = std::move(registry);
  result.truncated = static_cast<int>(result.triplets.size()) < opts.num_pairs;
  return result;
}

void write_mep_convergence_csv(std::ostream& os, int k, const std::vector<MepRecord>& records) {
  static const char* names[] = {"lambda", "mu", "nu"};
  os << "iteration";
  for (int j = 0; j < k; ++j) {
    os << ",re_" << names[j] << ",im_" << names[j];
  }
  os << ",residual,criterion,event\n" << std::setprecision(17);
  for (const auto& r : records) {
    os << r.iteration;
    for (int j = 0; j < k; ++j) {
      const auto jj = static_cast<std::size_t>(j);
      const Complex z = jj < r.value.size() ? r.value[jj] : Complex(std::nan(""), std::nan(""));
      os << ',' << z.real() << ',' << z.imag();
    }
    os << ',' << r.residual << ',' << r.criterion << ',' << to_string(r.event) << '\n';
  }
}

}  // namespace eigensel
