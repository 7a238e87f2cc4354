#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eigensel/kernels.hpp"
#include "eigensel/search_space.hpp"
#include "eigensel/selection.hpp"

namespace eigensel {

enum class Extraction { ritz, gal1 };

struct JdOptions {
  Complex target{0.0, 0.0};
  int num_pairs = 1;
  double tol = 1e-8;  // relative to sum_i |theta|^i ||A_i||_1
  int mindim = 10;
  int maxdim = 20;
  int max_outer = 200;
  int inner_steps = 10;
  double eta_sel = 0.1;
  SelectionMode mode = SelectionMode::standard;
  Extraction extraction = Extraction::ritz;
  std::uint64_t seed = 1;
  std::optional<CVector> start;
  bool precondition = true;  // exact LU of P(target)
  kernels::Backend backend = kernels::default_backend();

  /// Checks the invariants against the problem size (clamping maxdim to n
  /// and mindim below it when the problem is tiny).
  void validate(Index n);
};

/// A Ritz pair of the projected problem.
struct Candidate {
  ProjectivePoint point;
  Complex theta{0.0, 0.0};
  bool infinite = false;
  CVector c;  // coefficients in the basis, unit
  CVector v;  // V c, unit
  double distance = 0.0;
};

/// All Ritz pairs of sum_i theta^i H_i c = 0 ordered by distance to tau:
/// |theta - tau| over finite values (standard), or chordal distance to tau
/// with infinite values kept (homogeneous).
std::vector<Candidate> extract_candidates(const SearchSpace& space, Complex tau,
                                          SelectionMode mode = SelectionMode::standard);

/// Root of sum_i theta^i (v^H A_i v) with the smallest ||P(theta) v||; ties
/// go to the root nearest `reference`. Returns reference when the scalar
/// polynomial vanishes.
Complex gal1_refine(const PolyProblem& problem, const CVector& v, Complex reference);
/// Homogeneous variant; residual ||P(alpha, beta) v||, ties by chordal distance.
ProjectivePoint gal1_refine(const PolyProblem& problem, const CVector& v,
                            const ProjectivePoint& reference);

enum class JdEvent { expanded, converged, restarted, no_pass };

std::string to_string(JdEvent e);

struct ConvergenceRecord {
  int iteration = 0;
  ProjectivePoint point;
  Complex theta{0.0, 0.0};
  bool infinite = false;
  double residual = 0.0;  // relative
  double criterion = 0.0;
  JdEvent event = JdEvent::expanded;
};

struct JdResult {
  std::vector<EigenTriplet> triplets;
  std::vector<ConvergenceRecord> records;
  std::vector<std::string> warnings;
  bool truncated = false;
  int outer_iterations = 0;
};

/// Jacobi-Davidson with selection for polynomial eigenproblems.
JdResult jd_solve(const PolyProblem& problem, JdOptions opts);

/// CSV: iteration,re_theta,im_theta,residual,criterion,event
void write_convergence_csv(std::ostream& os, const std::vector<ConvergenceRecord>& records);

}  // namespace eigensel
