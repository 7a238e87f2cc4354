#include "eigensel/generators.hpp"

#include <random>

namespace eigensel {

PolyProblem gen_gyroscopic(Index n, std::uint64_t seed) {
  if (n < 2) {
    throw InvalidArgument("gen_gyroscopic needs n >= 2");
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  std::vector<Eigen::Triplet<Complex>> ta, tb, tc;
  for (Index i = 0; i < n; ++i) {
    ta.emplace_back(i, i, i == 0 ? 0.0 : unit(rng));
  }
  for (Index i = 0; i < n; ++i) {
    double c = 0.0;
    while (c == 0.0) {
      c = -unit(rng);  // (-1, 0]: reject the endpoint
    }
    tc.emplace_back(i, i, c);
  }
  for (Index i = 0; i + 1 < n; ++i) {
    tb.emplace_back(i, i + 1, 1.0);
    tb.emplace_back(i + 1, i, -1.0);
  }
  SparseCMatrix a(n, n), b(n, n), c(n, n);
  a.setFromTriplets(ta.begin(), ta.end());
  b.setFromTriplets(tb.begin(), tb.end());
  c.setFromTriplets(tc.begin(), tc.end());
  return PolyProblem({Coefficient(std::move(c)), Coefficient(std::move(b)), Coefficient(std::move(a))});
}

PolyProblem gen_example_2x2(double delta, double eps) {
  CMatrix a0(2, 2);
  a0 << 0.0, eps, 0.0, delta;
  return PolyProblem({Coefficient(a0), Coefficient(CMatrix(-CMatrix::Identity(2, 2)))});
}

PolyProblem gen_random_pep(Index n, int m, std::uint64_t seed, bool symmetric) {
  if (n < 1 || m < 1) {
    throw InvalidArgument("gen_random_pep needs n >= 1 and m >= 1");
  }
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
  std::vector<Coefficient> coeffs;
  for (int k = 0; k <= m; ++k) {
    CMatrix a(n, n);
    for (Index j = 0; j < n; ++j) {
      for (Index i = 0; i < n; ++i) {
        const double re = normal(rng);
        const double im = normal(rng);
        a(i, j) = Complex(re, im);
      }
    }
    if (symmetric) {
      a = ((a + a.transpose()) * 0.5).eval();
    }
    coeffs.emplace_back(std::move(a));
  }
  return PolyProblem(std::move(coeffs));
}

PolyProblem make_diagonal_qep(const RVector& b, const RVector& c) {
  const Index n = b.size();
  CMatrix a2 = CMatrix::Identity(n, n);
  CMatrix a1 = b.cast<Complex>().asDiagonal();
  CMatrix a0 = c.cast<Complex>().asDiagonal();
  return PolyProblem({Coefficient(a0), Coefficient(a1), Coefficient(a2)});
}

}  // namespace eigensel
