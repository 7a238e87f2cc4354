#include "eigensel/selection.hpp"

#include <cmath>
#include <limits>

namespace eigensel {

void SelectionConfig::validate() const {
  if (!(eta_sel > 0.0 && eta_sel < 1.0)) {
    throw InvalidArgument("eta_sel must lie in (0, 1)");
  }
  if (!(switch_tol >= 0.0) || !(defect_tol >= 0.0)) {
    throw InvalidArgument("selection tolerances must be nonnegative");
  }
}

CandidatePair CandidatePair::scalar(Complex theta, const CVector& v) {
  CandidatePair c;
  c.theta = theta;
  c.point = from_scalar(theta);
  c.v = v / v.norm();
  return c;
}

CandidatePair CandidatePair::projective(const ProjectivePoint& p, const CVector& v) {
  CandidatePair c;
  c.point = p;
  c.infinite = is_infinite(p);
  c.theta = c.infinite ? Complex(std::numeric_limits<double>::infinity(), 0.0) : p.alpha / p.beta;
  c.v = v / v.norm();
  return c;
}

Registry::Registry(const NepProblem& problem, SelectionConfig cfg)
    : problem_(&problem), poly_(dynamic_cast<const PolyProblem*>(&problem)), cfg_(cfg) {
  cfg_.validate();
  if (cfg_.mode == SelectionMode::homogeneous && poly_ == nullptr) {
    throw InvalidArgument("homogeneous selection needs a polynomial problem");
  }
  if (poly_ != nullptr) {
    left_products_.assign(static_cast<std::size_t>(poly_->degree() + 1), CMatrix(0, poly_->dim()));
  }
}

std::vector<Complex> Registry::weights_for(const EigenTriplet& t, const CandidatePair& c) const {
  const int m = poly_->degree();
  if (cfg_.mode == SelectionMode::homogeneous) {
    return hom_divided_difference_weights(m, t.point, c.point, cfg_.switch_tol);
  }
  return divided_difference_weights(m, t.value, c.theta);
}

double Registry::criterion_value(const CandidatePair& cand) const {
  if (triplets_.empty()) {
    return 0.0;
  }
  if (cfg_.mode == SelectionMode::standard && cand.infinite) {
    return std::numeric_limits<double>::infinity();
  }
  const CVector v = cand.v / cand.v.norm();
  double best = 0.0;
  for (std::size_t i = 0; i < triplets_.size(); ++i) {
    const EigenTriplet& t = triplets_[i];
    Complex num;
    if (poly_ != nullptr) {
      const auto w = weights_for(t, cand);
      num = 0.0;
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (w[j] != Complex(0.0)) {
          num += w[j] * (left_products_[j].row(static_cast<Index>(i)) * v)(0);
        }
      }
    } else {
      num = t.left.dot(problem_->apply_divided_difference(t.value, cand.theta, v));
    }
    best = std::max(best, std::abs(num) / std::abs(t.denom));
  }
  return best;
}

RVector Registry::criterion_values(const std::vector<CandidatePair>& cands,
                                   kernels::Backend backend) const {
  const auto nc = static_cast<Index>(cands.size());
  if (triplets_.empty()) {
    return RVector::Zero(nc);
  }
  if (poly_ == nullptr) {
    RVector out(nc);
    for (Index c = 0; c < nc; ++c) {
      out(c) = criterion_value(cands[static_cast<std::size_t>(c)]);
    }
    return out;
  }
  const auto d = static_cast<Index>(triplets_.size());
  const int m = poly_->degree();
  CMatrix vs(poly_->dim(), nc);
  std::vector<CMatrix> weights(static_cast<std::size_t>(m + 1), CMatrix(d, nc));
  std::vector<bool> forced_inf(static_cast<std::size_t>(nc), false);
  for (Index c = 0; c < nc; ++c) {
    const CandidatePair& cand = cands[static_cast<std::size_t>(c)];
    vs.col(c) = cand.v / cand.v.norm();
    const bool skip = cfg_.mode == SelectionMode::standard && cand.infinite;
    forced_inf[static_cast<std::size_t>(c)] = skip;
    for (Index i = 0; i < d; ++i) {
      const auto w = skip ? std::vector<Complex>(static_cast<std::size_t>(m + 1), Complex(0.0))
                          : weights_for(triplets_[static_cast<std::size_t>(i)], cand);
      for (int j = 0; j <= m; ++j) {
        weights[static_cast<std::size_t>(j)](i, c) = w[static_cast<std::size_t>(j)];
      }
    }
  }
  CVector denom(d);
  for (Index i = 0; i < d; ++i) {
    denom(i) = triplets_[static_cast<std::size_t>(i)].denom;
  }
  RVector out = kernels::selection_values(left_products_, vs, weights, denom, backend);
  for (Index c = 0; c < nc; ++c) {
    if (forced_inf[static_cast<std::size_t>(c)]) {
      out(c) = std::numeric_limits<double>::infinity();
    }
  }
  return out;
}

const EigenTriplet& Registry::register_triplet(Complex value, CVector x, CVector y, double residual,
                                               int iteration) {
  if (cfg_.mode == SelectionMode::homogeneous) {
    return register_triplet(from_scalar(value), std::move(x), std::move(y), residual, iteration);
  }
  if (x.norm() == 0.0 || y.norm() == 0.0) {
    throw InvalidArgument("cannot register a zero eigenvector");
  }
  EigenTriplet t;
  t.value = value;
  t.point = from_scalar(value);
  t.right = x / x.norm();
  t.left = y / y.norm();
  t.residual = residual;
  t.iteration = iteration;
  t.denom = t.left.dot(problem_->apply_derivative(value, t.right));
  const double scale = problem_->derivative_norm_estimate(value);
  if (!(std::abs(t.denom) >= cfg_.defect_tol * scale) || t.denom == Complex(0.0)) {
    throw DefectiveEigenvalue("y^H F'(lambda) x below the defectiveness threshold");
  }
  if (poly_ != nullptr) {
    try {
      t.cond = condition_number(*poly_, value, t.right, t.left);
    } catch (const IllConditioned&) {
      t.cond.reset();
    }
  }
  return append(std::move(t));
}

const EigenTriplet& Registry::register_triplet(const ProjectivePoint& p, CVector x, CVector y,
                                               double residual, int iteration) {
  if (poly_ == nullptr) {
    throw InvalidArgument("projective registration needs a polynomial problem");
  }
  if (cfg_.mode == SelectionMode::standard) {
    const auto v = to_finite(p);
    if (!v) {
      throw InvalidArgument("standard-mode registry cannot hold an infinite eigenvalue");
    }
    return register_triplet(*v, std::move(x), std::move(y), residual, iteration);
  }
  if (x.norm() == 0.0 || y.norm() == 0.0) {
    throw InvalidArgument("cannot register a zero eigenvector");
  }
  EigenTriplet t;
  t.point = scale_canonical(p);
  t.infinite = is_infinite(t.point);
  t.value = t.infinite ? Complex(std::numeric_limits<double>::infinity(), 0.0)
                       : t.point.alpha / t.point.beta;
  t.right = x / x.norm();
  t.left = y / y.norm();
  t.residual = residual;
  t.iteration = iteration;
  const int m = poly_->degree();
  const auto w = hom_D_weights(m, t.point);
  t.denom = t.left.dot(poly_->apply_weighted(w, t.right));
  double scale = 0.0;
  for (int i = 0; i <= m; ++i) {
    scale += std::abs(w[static_cast<std::size_t>(i)]) * poly_->coeff_norms2()[static_cast<std::size_t>(i)];
  }
  if (!(std::abs(t.denom) >= cfg_.defect_tol * scale) || t.denom == Complex(0.0)) {
    throw DefectiveEigenvalue("y^H DP(alpha, beta) x below the defectiveness threshold");
  }
  double num = 0.0;
  for (int i = 0; i <= m; ++i) {
    num += std::pow(std::abs(t.point.alpha), i) * std::pow(std::abs(t.point.beta), m - i) *
           poly_->coeff_norms2()[static_cast<std::size_t>(i)];
  }
  t.cond = num / std::abs(t.denom);
  return append(std::move(t));
}

const EigenTriplet& Registry::append(EigenTriplet t) {
  if (poly_ != nullptr) {
    for (int j = 0; j <= poly_->degree(); ++j) {
      CMatrix& lp = left_products_[static_cast<std::size_t>(j)];
      const CVector row = poly_->coeff(j).apply_adjoint(t.left);  // A_j^H y
      lp.conservativeResize(lp.rows() + 1, Eigen::NoChange);
      lp.row(lp.rows() - 1) = row.adjoint();
    }
  }
  triplets_.push_back(std::move(t));
  return triplets_.back();
}

}  // namespace eigensel
