#include <benchmark/benchmark.h>

#include "qho/geometry.hpp"
#include "qho/oscillator.hpp"
#include "qho/sign_grid.hpp"

namespace {

using namespace qho;

void run(benchmark::State& state, bool parallel) {
  const int n = 7;
  const int res = static_cast<int>(state.range(0));
  const Superposition s(n, Angle::radians(0.05));
  const SeparableField f = SeparableField::from(s);
  const Box box = enclosing_box(n, s.theta());
  for (auto _ : state) {
    SignGrid g = parallel ? build_sign_grid(f, box, res, res) : build_sign_grid_serial(f, box, res, res);
    benchmark::DoNotOptimize(g.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<long>(res) * res);
}

void BM_SignGridSerial(benchmark::State& state) { run(state, false); }
void BM_SignGridParallel(benchmark::State& state) { run(state, true); }

}  // namespace

BENCHMARK(BM_SignGridSerial)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_SignGridParallel)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
