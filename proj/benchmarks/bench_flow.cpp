#include <benchmark/benchmark.h>

#include "nilflow/catalog.hpp"
#include "nilflow/flow.hpp"

using namespace nilflow;

namespace {

// Right-hand side cost scales with the Gram size m = r for the Heisenberg family.
void BM_BracketFlowRhs(benchmark::State& state) {
  const int r = static_cast<int>(state.range(0));
  const auto roots = root_system(*catalog::get("heisenberg(" + std::to_string(r) + ")").spec);
  const Eigen::VectorXd a = Eigen::VectorXd::Constant(r, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket_flow_rhs(roots, a));
  }
}
BENCHMARK(BM_BracketFlowRhs)->Arg(2)->Arg(5)->Arg(10)->Arg(20);

void BM_IntegrateToT(benchmark::State& state, const char* name, double t_end) {
  const auto entry = catalog::get(name);
  const auto roots = root_system(*entry.spec);
  const auto metric =
      entry.soliton_metric ? *entry.soliton_metric : DiagonalMetric::ones(entry.spec->dim());
  const auto state0 = initial_state(*entry.spec, metric);
  IntegratorConfig cfg;
  cfg.t_end = t_end;
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate(roots, state0, cfg));
  }
}
BENCHMARK_CAPTURE(BM_IntegrateToT, h3_t100, "h3", 100.0);
BENCHMARK_CAPTURE(BM_IntegrateToT, p5_t100, "p5", 100.0);
BENCHMARK_CAPTURE(BM_IntegrateToT, r6_t100, "r6", 100.0);

void BM_SolitonTrajectoryEval(benchmark::State& state) {
  const auto entry = catalog::get("p5");
  const auto roots = root_system(*entry.spec);
  const auto state0 = initial_state(*entry.spec, *entry.soliton_metric);
  const auto cert = soliton_test(roots, state0.a).value();
  double t = 0.0;
  for (auto _ : state) {
    t += 0.25;
    benchmark::DoNotOptimize(soliton_trajectory(cert, state0, t));
  }
}
BENCHMARK(BM_SolitonTrajectoryEval);

}  // namespace
