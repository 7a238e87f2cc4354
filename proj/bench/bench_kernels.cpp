#include <benchmark/benchmark.h>

#include <random>
#include <vector>

#include "eigensel/kernels.hpp"

using namespace eigensel;
namespace k = eigensel::kernels;

namespace {

CMatrix random_matrix(Index r, Index c, std::uint64_t seed) {
  std::mt19937_64 g(seed);
  std::normal_distribution<double> d;
  CMatrix m(r, c);
  for (Index i = 0; i < m.size(); ++i) {
    const double re = d(g);
    m.data()[i] = {re, d(g)};
  }
  return m;
}

k::Backend backend_of(const benchmark::State& s) {
  return s.range(1) == 0 ? k::Backend::serial : k::Backend::parallel;
}

void BM_combine(benchmark::State& state) {
  const Index n = state.range(0);
  std::vector<CMatrix> store;
  std::vector<const CMatrix*> mats;
  std::vector<Complex> w;
  for (int j = 0; j < 7; ++j) {
    store.push_back(random_matrix(n, n, 10 + j));
  }
  for (int j = 0; j < 7; ++j) {
    mats.push_back(&store[static_cast<std::size_t>(j)]);
    w.emplace_back(1.0 / (j + 1), 0.5);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(k::combine(w, mats, backend_of(state)));
  }
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

void BM_selection_values(benchmark::State& state) {
  const Index n = state.range(0);
  const Index d = 16, nc = 64;
  std::vector<CMatrix> left, weights;
  for (int j = 0; j < 3; ++j) {
    left.push_back(random_matrix(d, n, 20 + j));
    weights.push_back(random_matrix(d, nc, 30 + j));
  }
  const CMatrix cands = random_matrix(n, nc, 40);
  const CVector denom = random_matrix(d, 1, 41);
  for (auto _ : state) {
    benchmark::DoNotOptimize(k::selection_values(left, cands, weights, denom, backend_of(state)));
  }
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

void BM_kron_apply(benchmark::State& state) {
  const Index n = state.range(0);
  std::vector<CMatrix> store;
  for (int j = 0; j < 6; ++j) {
    store.push_back(random_matrix(n, n, 50 + j));
  }
  std::vector<k::KronTerm> terms{{Complex(1.0), {&store[0], &store[1], &store[2]}},
                                 {Complex(-1.0), {&store[3], &store[4], &store[5]}}};
  const CVector x = random_matrix(n * n * n, 1, 60);
  for (auto _ : state) {
    benchmark::DoNotOptimize(k::kron_apply(terms, x, backend_of(state)));
  }
  state.SetLabel(state.range(1) == 0 ? "serial" : "parallel");
}

}  // namespace

BENCHMARK(BM_combine)->ArgsProduct({{200, 1000}, {0, 1}});
BENCHMARK(BM_selection_values)->ArgsProduct({{200, 2000}, {0, 1}});
BENCHMARK(BM_kron_apply)->ArgsProduct({{20, 60}, {0, 1}});

BENCHMARK_MAIN();
