// Serial reference against the OpenMP weight-block loop.  Both paths run the
// same per-block reduction; only the scheduling differs.
#include <benchmark/benchmark.h>

#include "bggkit/homology/homology.hpp"

using namespace bggkit;

namespace {

const char* const kStructures[] = {"grassmannian:3", "lagrangean-contact:3", "quaternionic-contact:2"};

void run(benchmark::State& state, homology::HomologyOptions::Mode mode) {
  const liealg::GradedLieAlgebra g(liealg::parse_structure(kStructures[state.range(0)]));
  const homology::ChainComplex cc(g);
  homology::HomologyOptions opt;
  opt.mode = mode;
  opt.parallel = state.range(1) != 0;
  std::size_t components = 0;
  for (auto _ : state) {
    const auto hs = homology::homology_range(cc, 0, cc.max_degree(), opt);
    components = 0;
    for (const auto& h : hs) components += h.components.size();
    benchmark::DoNotOptimize(components);
  }
  state.SetLabel(std::string(kStructures[state.range(0)]) + (opt.parallel ? " openmp" : " serial"));
  state.counters["components"] = static_cast<double>(components);
}

void BM_HighestWeight(benchmark::State& state) { run(state, homology::HomologyOptions::Mode::HighestWeightOnly); }
void BM_Full(benchmark::State& state) { run(state, homology::HomologyOptions::Mode::Full); }

}  // namespace

BENCHMARK(BM_HighestWeight)->ArgsProduct({{0, 1, 2}, {0, 1}})->Unit(benchmark::kMillisecond);
BENCHMARK(BM_Full)->ArgsProduct({{0, 1}, {0, 1}})->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
