#include "eigensel/oracle.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "eigensel/dense_eig.hpp"

namespace eigensel {

Index oracle_size_cap() {
  if (const char* env = std::getenv("EIGENSEL_ORACLE_CAP")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) {
        return static_cast<Index>(v);
      }
    } catch (const std::exception&) {
    }
  }
  return 2000;
}

std::vector<OracleTriplet> oracle_all_eigenpairs(const PolyProblem& problem) {
  const Index size = problem.dim() * problem.degree();
  if (size > oracle_size_cap()) {
    throw SizeCapExceeded("oracle size " + std::to_string(size) + " exceeds cap " +
                          std::to_string(oracle_size_cap()));
  }
  std::vector<CMatrix> coeffs;
  for (const auto& c : problem.coeffs()) {
    coeffs.push_back(c.to_dense());
  }
  const PolyEig pe = polynomial_eig(coeffs, true);
  std::vector<OracleTriplet> out;
  for (std::size_t k = 0; k < pe.points.size(); ++k) {
    OracleTriplet t;
    t.point = pe.points[k];
    t.infinite = is_infinite(t.point);
    if (!t.infinite) {
      t.value = t.point.alpha / t.point.beta;
    }
    t.right = pe.right.col(static_cast<Index>(k));
    t.left = pe.left.col(static_cast<Index>(k));
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<OracleTriplet> oracle_nearest(const PolyProblem& problem, Complex tau, std::size_t count) {
  auto all = oracle_all_eigenpairs(problem);
  std::erase_if(all, [](const OracleTriplet& t) { return t.infinite; });
  std::sort(all.begin(), all.end(), [&](const OracleTriplet& a, const OracleTriplet& b) {
    return std::abs(a.value - tau) < std::abs(b.value - tau);
  });
  if (all.size() > count) {
    all.resize(count);
  }
  return all;
}

}  // namespace eigensel
