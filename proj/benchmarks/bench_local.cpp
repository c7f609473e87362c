#include <benchmark/benchmark.h>

#include <anticyc/characters.hpp>
#include <anticyc/local_constants.hpp>

using namespace anticyc;

namespace {

MultChar first_ramified(u64 ell, ExtKind kind, unsigned c) {
  for (const auto& chi : enumerate_self_dual(LocalQuadExt(ell, kind), c))
    if (chi.conductor() == c) return chi;
  return enumerate_self_dual(LocalQuadExt(ell, kind), c).back();
}

void BM_GaussSumDirect(benchmark::State& state) {
  const ArithChar chi(first_ramified(static_cast<u64>(state.range(0)), ExtKind::inert, 1));
  const mpq_class beta(1, static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_A(chi, beta));
}
BENCHMARK(BM_GaussSumDirect)->Arg(5)->Arg(13);

void BM_GaussSumClosed(benchmark::State& state) {
  const ArithChar chi(first_ramified(static_cast<u64>(state.range(0)), ExtKind::inert, 1));
  const mpq_class beta(1, static_cast<long>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(gauss_sum_A_closed(chi, beta));
}
BENCHMARK(BM_GaussSumClosed)->Arg(5)->Arg(13);

void BM_EnumerateSelfDual(benchmark::State& state) {
  const LocalQuadExt E(7, ExtKind::ramified);
  for (auto _ : state) benchmark::DoNotOptimize(enumerate_self_dual(E, static_cast<unsigned>(state.range(0))));
}
BENCHMARK(BM_EnumerateSelfDual)->Arg(2)->Arg(3);

void BM_Dichotomy(benchmark::State& state) {
  const MultChar chi = first_ramified(5, ExtKind::ramified, 2);
  for (auto _ : state) benchmark::DoNotOptimize(dichotomy_check(chi, mpq_class(2, 25)));
}
BENCHMARK(BM_Dichotomy);

}  // namespace
