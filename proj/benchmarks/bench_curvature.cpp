#include <benchmark/benchmark.h>

#include <random>

#include "nilflow/catalog.hpp"
#include "nilflow/curvature.hpp"

using namespace nilflow;

namespace {

void BM_RicciOracle(benchmark::State& state, const char* name) {
  const auto spec = *catalog::get(name).spec;
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> dist(0.1, 10.0);
  Eigen::VectorXd q(spec.dim());
  for (int i = 0; i < spec.dim(); ++i) q[i] = dist(rng);
  const auto metric = DiagonalMetric::from_values(q);
  for (auto _ : state) {
    benchmark::DoNotOptimize(ricci_form_oracle(spec, metric));
  }
}
BENCHMARK_CAPTURE(BM_RicciOracle, h3, "h3");
BENCHMARK_CAPTURE(BM_RicciOracle, r6, "r6");
BENCHMARK_CAPTURE(BM_RicciOracle, heisenberg10, "heisenberg(10)");

void BM_RicciVectorFormula(benchmark::State& state) {
  const auto spec = *catalog::get("r6").spec;
  const auto roots = root_system(spec);
  const auto a = structure_vector(spec, DiagonalMetric::ones(7));
  for (auto _ : state) {
    benchmark::DoNotOptimize(ricci_vector(roots, a));
  }
}
BENCHMARK(BM_RicciVectorFormula);

void BM_StablyRicciDiagonal(benchmark::State& state) {
  const auto spec = *catalog::get("r6").spec;
  for (auto _ : state) {
    benchmark::DoNotOptimize(is_stably_ricci_diagonal(spec));
  }
}
BENCHMARK(BM_StablyRicciDiagonal);

void BM_SolitonSearch(benchmark::State& state, const char* name) {
  const auto spec = *catalog::get(name).spec;
  for (auto _ : state) {
    try {
      benchmark::DoNotOptimize(find_soliton_metric(spec));
    } catch (const NoPositiveSolutionError&) {
      // r6: exercises the infeasibility proof
    }
  }
}
BENCHMARK_CAPTURE(BM_SolitonSearch, p5, "p5");
BENCHMARK_CAPTURE(BM_SolitonSearch, r6, "r6");

}  // namespace
