#pragma once

#include <optional>
#include <vector>

#include "eigensel/homogeneous.hpp"
#include "eigensel/kernels.hpp"
#include "eigensel/problems.hpp"

namespace eigensel {

enum class SelectionMode { standard, homogeneous };

struct SelectionConfig {
  double eta_sel = 0.1;
  SelectionMode mode = SelectionMode::standard;
  /// Chordal distance below which the homogeneous divided difference uses DP.
  double switch_tol = 1e-8;
  /// Registration refuses |y^H F'(lambda) x| below this times ||F'(lambda)||.
  double defect_tol = 1e-12;

  void validate() const;
};

/// A detected eigenvalue with unit right/left vectors and the cached
/// criterion denominator y^H F'(lambda) x (y^H DP(alpha, beta) x in
/// homogeneous mode).
struct EigenTriplet {
  Complex value{0.0, 0.0};
  ProjectivePoint point;
  bool infinite = false;
  CVector right;
  CVector left;
  Complex denom{0.0, 0.0};
  std::optional<double> cond;
  double residual = 0.0;
  int iteration = -1;
};

struct CandidatePair {
  Complex theta{0.0, 0.0};
  ProjectivePoint point;
  bool infinite = false;
  CVector v;

  static CandidatePair scalar(Complex theta, const CVector& v);
  static CandidatePair projective(const ProjectivePoint& p, const CVector& v);
};

/// Append-only list of detected eigentriplets plus the selection criterion.
/// Registration must be serialized by the caller; reads are thread safe.
class Registry {
 public:
  explicit Registry(const NepProblem& problem, SelectionConfig cfg = {});

  const SelectionConfig& config() const { return cfg_; }
  const NepProblem& problem() const { return *problem_; }
  std::size_t size() const { return triplets_.size(); }
  bool empty() const { return triplets_.empty(); }
  const std::vector<EigenTriplet>& triplets() const { return triplets_; }

  /// max_i |y_i^H F[lambda_i, theta] v| / |denom_i|, 0 for an empty registry.
  double criterion_value(const CandidatePair& cand) const;
  bool passes(const CandidatePair& cand) const { return criterion_value(cand) < cfg_.eta_sel; }
  /// Batched criterion values (polynomial problems use the kernel backend).
  RVector criterion_values(const std::vector<CandidatePair>& cands,
                           kernels::Backend backend = kernels::default_backend()) const;

  /// Normalizes x and y, computes denom and the condition number, appends.
  /// Throws DefectiveEigenvalue when the denominator is at the defect threshold.
  const EigenTriplet& register_triplet(Complex value, CVector x, CVector y, double residual = 0.0,
                                       int iteration = -1);
  const EigenTriplet& register_triplet(const ProjectivePoint& p, CVector x, CVector y,
                                       double residual = 0.0, int iteration = -1);

 private:
  const EigenTriplet& append(EigenTriplet t);
  std::vector<Complex> weights_for(const EigenTriplet& t, const CandidatePair& c) const;

  const NepProblem* problem_;
  const PolyProblem* poly_;
  SelectionConfig cfg_;
  std::vector<EigenTriplet> triplets_;
  // left_products_[j] row i = y_i^H A_j (polynomial problems only)
  std::vector<CMatrix> left_products_;
};

}  // namespace eigensel
