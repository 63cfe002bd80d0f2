#include <benchmark/benchmark.h>

#include "mare/analysis.hpp"
#include "mare/generators.hpp"
#include "mare/linalg.hpp"
#include "mare/solvers.hpp"

using namespace mare;

namespace {

Problem sized(std::size_t n, Category cat = Category::Nonsingular) {
  GenSpec spec;
  spec.n = n;
  spec.m = n;
  spec.seed = 17;
  spec.category = cat;
  spec.nonzero_gap = cat != Category::Nonsingular;
  return random_problem(spec);
}

void run_method(benchmark::State& state, Method m, Category cat) {
  const Problem p = sized(static_cast<std::size_t>(state.range(0)), cat);
  SolverOptions o;
  o.method = m;
  for (auto _ : state) {
    Solution s;
    switch (m) {
      case Method::FixedPoint: s = solve_fixed_point(p, o); break;
      case Method::Newton: s = solve_newton(p, o); break;
      case Method::Schur: s = solve_schur(p, o); break;
      default: s = solve_doubling(p, o); break;
    }
    benchmark::DoNotOptimize(s.phi.data().data());
  }
}

void BM_FixedPoint(benchmark::State& s) { run_method(s, Method::FixedPoint, Category::Nonsingular); }
void BM_Newton(benchmark::State& s) { run_method(s, Method::Newton, Category::Nonsingular); }
void BM_Doubling(benchmark::State& s) { run_method(s, Method::Doubling, Category::Nonsingular); }
void BM_Schur(benchmark::State& s) { run_method(s, Method::Schur, Category::Nonsingular); }
void BM_DoublingSingular(benchmark::State& s) { run_method(s, Method::Doubling, Category::IrreducibleSingular); }
void BM_NewtonSingular(benchmark::State& s) { run_method(s, Method::Newton, Category::IrreducibleSingular); }

// full pipeline: categorize, solve, dual solve, factorization check
void BM_Pipeline(benchmark::State& state) {
  const Problem p = sized(static_cast<std::size_t>(state.range(0)), Category::IrreducibleSingular);
  for (auto _ : state) benchmark::DoNotOptimize(solve(p).residual_phi);
}

void BM_OrderedSchur(benchmark::State& state) {
  const Matrix h = h_matrix(sized(static_cast<std::size_t>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(ordered_real_schur(h).t.data().data());
}

void BM_Categorize(benchmark::State& state) {
  const Matrix k = k_matrix(sized(static_cast<std::size_t>(state.range(0)), Category::ReducibleSingularRegular));
  for (auto _ : state) benchmark::DoNotOptimize(categorize(k).regular);
}

}  // namespace

BENCHMARK(BM_FixedPoint)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_Newton)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_Doubling)->RangeMultiplier(2)->Range(2, 64);
BENCHMARK(BM_Schur)->RangeMultiplier(2)->Range(2, 64);
BENCHMARK(BM_DoublingSingular)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_NewtonSingular)->RangeMultiplier(2)->Range(2, 32);
BENCHMARK(BM_Pipeline)->RangeMultiplier(2)->Range(2, 16);
BENCHMARK(BM_OrderedSchur)->RangeMultiplier(2)->Range(2, 64);
BENCHMARK(BM_Categorize)->RangeMultiplier(2)->Range(2, 32);

BENCHMARK_MAIN();
