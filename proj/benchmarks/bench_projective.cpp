#include <benchmark/benchmark.h>

#include "nilflow/catalog.hpp"
#include "nilflow/projective.hpp"

using namespace nilflow;

namespace {

ProjectiveSystem system_for(const std::string& name) {
  const auto entry = catalog::get(name);
  if (entry.is_gram_only()) return build_projective_system(*entry.gram_only, false);
  return build_projective_system(root_system(*entry.spec).gram, true);
}

void BM_IntegrateProjective(benchmark::State& state, const char* name, double t_end) {
  const auto sys = system_for(name);
  const Eigen::VectorXd s0 = Eigen::VectorXd::Constant(sys.m() - 1, 0.5);
  for (auto _ : state) {
    benchmark::DoNotOptimize(integrate_projective(sys, s0, t_end));
  }
}
BENCHMARK_CAPTURE(BM_IntegrateProjective, p5_t20, "p5", 20.0);
BENCHMARK_CAPTURE(BM_IntegrateProjective, r6_t50, "r6", 50.0);

// Subset enumeration is exponential in m - 1; r6 (m = 8) is the catalog worst case.
void BM_Equilibria(benchmark::State& state, const char* name) {
  const auto sys = system_for(name);
  for (auto _ : state) {
    benchmark::DoNotOptimize(equilibria(sys));
  }
}
BENCHMARK_CAPTURE(BM_Equilibria, p5, "p5");
BENCHMARK_CAPTURE(BM_Equilibria, l4b, "l4b_gram");
BENCHMARK_CAPTURE(BM_Equilibria, r6, "r6");

void BM_PuKernel(benchmark::State& state) {
  const auto sys = system_for("r6");
  for (auto _ : state) {
    benchmark::DoNotOptimize(pu_kernel(sys));
  }
}
BENCHMARK(BM_PuKernel);

}  // namespace
