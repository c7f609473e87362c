#include <benchmark/benchmark.h>

#include <anticyc/characters.hpp>
#include <anticyc/mu_engine.hpp>

using namespace anticyc;

namespace {

void BM_MuSweep(benchmark::State& state) {
  GlobalSetup s;
  for (const auto& chi : enumerate_self_dual(LocalQuadExt(5, ExtKind::inert), 1))
    if (chi.unit_order() == 3) {
      s.nonsplit.push_back({chi, std::make_pair(-2L, 2L), std::nullopt});
      break;
    }
  const SweepOptions opts{.jobs = static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(mu_sweep(s, opts));
}
BENCHMARK(BM_MuSweep)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

}  // namespace
