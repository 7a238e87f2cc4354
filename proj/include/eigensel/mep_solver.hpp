#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "eigensel/jdsolver.hpp"
#include "eigensel/mep.hpp"

namespace eigensel {

struct MepOptions {
  std::vector<Complex> target;  // one entry per parameter; empty means the origin
  int num_pairs = 1;
  double tol = 1e-10;  // max_i ||W_i(theta) v_i|| / pencil_scale_i
  int mindim = 5;      // per factor
  int maxdim = 10;     // per factor
  int max_outer = 200;
  int inner_steps = 10;
  double eta_sel = 0.1;
  bool strict = false;  // legacy criterion instead of the ratio test
  std::uint64_t seed = 1;
  std::optional<std::vector<CVector>> start;
  bool precondition = true;  // LU of W_i(target) per factor
  kernels::Backend backend = kernels::default_backend();

  void validate(const LinearMep& mep);
};

struct MepRecord {
  int iteration = 0;
  std::vector<Complex> value;
  double residual = 0.0;
  double criterion = 0.0;
  JdEvent event = JdEvent::expanded;
};

struct MepResult {
  std::vector<MepTriplet> triplets;
  std::vector<MepRecord> records;
  std::vector<std::string> warnings;
  bool truncated = false;
  int outer_iterations = 0;
};

/// Tensor Jacobi-Davidson with the multiparameter selection criterion.
MepResult mep_subspace_solve(const LinearMep& mep, MepOptions opts);

/// CSV: iteration,re_lambda,im_lambda,re_mu,im_mu[,re_nu,im_nu],residual,criterion,event
void write_mep_convergence_csv(std::ostream& os, int k, const std::vector<MepRecord>& records);

}  // namespace eigensel
