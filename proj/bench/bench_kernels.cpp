// Serial reference against OpenMP paths for the hot kernels.

#include <random>

#include <benchmark/benchmark.h>

#include "ltiframe/basis.hpp"
#include "ltiframe/kernels.hpp"
#include "ltiframe/moq.hpp"

namespace {

using namespace ltiframe;

Matrix random_matrix(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  Matrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = u(rng);
  return m;
}

Execution exec_of(const benchmark::State& state) {
  return state.range(1) == 0 ? Execution::serial : Execution::parallel;
}

void BM_TabulatePropagator(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(rng, n, n);
  const Matrix b = random_matrix(rng, n, 2);
  const auto rule = linalg::composite_gauss_legendre(48, 8, 0.0, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::tabulate_propagator(a, b, 1.0, rule, exec_of(state)));
  }
}

void BM_ProjectOntoBasis(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const int n = static_cast<int>(state.range(0));
  const auto rule = linalg::composite_gauss_legendre(48, 8, 0.0, 1.0);
  const auto table = kernels::tabulate_propagator(random_matrix(rng, n, n),
                                                  random_matrix(rng, n, 2), 1.0, rule,
                                                  Execution::serial);
  const Matrix values = build_basis(1.0, 2, 32).tabulate(rule.nodes);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::project_onto_basis(table, values, exec_of(state)));
  }
}

void BM_OuterProductSum(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const Matrix v = random_matrix(rng, state.range(0), 2048);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::outer_product_sum(v, exec_of(state)));
  }
}

void BM_PairwiseInnerSquareSum(benchmark::State& state) {
  std::mt19937_64 rng(4);
  const Matrix v = random_matrix(rng, state.range(0), 1024);
  for (auto _ : state) {
    benchmark::DoNotOptimize(kernels::pairwise_inner_square_sum(v, exec_of(state)));
  }
}

void BM_SelectActuators(benchmark::State& state) {
  std::mt19937_64 rng(5);
  const int n = static_cast<int>(state.range(0));
  const Matrix a = random_matrix(rng, n, n);
  std::vector<Vector> cands;
  for (int j = 0; j < 24; ++j) cands.push_back(random_matrix(rng, n, 1).col(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(select_actuators(a, cands, 4, Horizon::finite(1.0),
                                              TimeMode::continuous, exec_of(state)));
  }
}

void Args(benchmark::internal::Benchmark* b) {
  for (int n : {4, 16, 48}) {
    b->Args({n, 0});
    b->Args({n, 1});
  }
  b->ArgNames({"n", "parallel"});
}

BENCHMARK(BM_TabulatePropagator)->Apply(Args);
BENCHMARK(BM_ProjectOntoBasis)->Apply(Args);
BENCHMARK(BM_OuterProductSum)->Apply(Args);
BENCHMARK(BM_PairwiseInnerSquareSum)->Apply(Args);
BENCHMARK(BM_SelectActuators)->Apply(Args);

}  // namespace

BENCHMARK_MAIN();
