#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "eigensel/problems.hpp"

namespace eigensel {

/// Append t to the orthonormal columns of v after two Gram-Schmidt passes.
/// A vector that collapses below 1e-12 ||t|| is replaced by a random vector
/// drawn from rng and orthogonalized the same way. Returns v unchanged when
/// it already spans the whole space.
CMatrix rgs(const CMatrix& v, const CVector& t, std::mt19937_64& rng);

/// Orthonormal basis V of the search space with W_i = A_i V and H_i = V^H A_i V.
class SearchSpace {
 public:
  SearchSpace(const PolyProblem& problem, std::uint64_t seed);

  Index size() const { return v_.cols(); }
  Index dim() const { return problem_->dim(); }
  const CMatrix& basis() const { return v_; }
  const std::vector<CMatrix>& products() const { return w_; }
  const std::vector<CMatrix>& projections() const { return h_; }

  /// rgs(V, t) plus the new column of every W_i and row/column of every H_i.
  /// Returns false when V already spans the whole space.
  bool expand(const CVector& t);
  /// Replace V by V Q where Q is an orthonormal basis of the columns of c
  /// (k x q); linearly dependent columns are dropped.
  void restart(const CMatrix& c);

  /// ||V^H V - I||_max.
  double orthogonality_error() const;
  /// max_i ||A_i V - W_i|| + ||V^H W_i - H_i||, relative.
  double consistency_error() const;

 private:
  void rebuild();

  const PolyProblem* problem_;
  std::mt19937_64 rng_;
  CMatrix v_;
  std::vector<CMatrix> w_;
  std::vector<CMatrix> h_;
};

}  // namespace eigensel
