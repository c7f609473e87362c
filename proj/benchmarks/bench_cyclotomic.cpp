#include <benchmark/benchmark.h>

#include <random>

#include <anticyc/cyclotomic.hpp>
#include <anticyc/padic.hpp>

using namespace anticyc;

namespace {

Cyclotomic random_element(std::mt19937_64& rng, u64 n) {
  std::vector<mpq_class> c(n);
  for (auto& x : c) x = mpq_class(static_cast<long>(rng() % 11) - 5, static_cast<long>(rng() % 3) + 1);
  return Cyclotomic::from_coefficients(n, c);
}

void BM_Multiply(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<u64>(state.range(0));
  const Cyclotomic a = random_element(rng, n), b = random_element(rng, n);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_Multiply)->Arg(15)->Arg(120)->Arg(360);

void BM_Inverse(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const Cyclotomic a = random_element(rng, static_cast<u64>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(a.inverse());
}
BENCHMARK(BM_Inverse)->Arg(15)->Arg(120);

void BM_Valuation(benchmark::State& state) {
  std::mt19937_64 rng(3);
  const PrimeAbovePChoice choice(3, 13);
  const Cyclotomic a = random_element(rng, static_cast<u64>(state.range(0)));
  choice.valuation(a);  // warm the lift cache
  for (auto _ : state) benchmark::DoNotOptimize(choice.valuation(a));
}
BENCHMARK(BM_Valuation)->Arg(39)->Arg(117);

}  // namespace
