#include <benchmark/benchmark.h>

#include "acm3/jet.hpp"
#include "acm3/sampling.hpp"

namespace {

acm3::Jet seeded_jet(std::size_t dim, int order, std::uint64_t seed) {
  acm3::Rng rng(seed);
  acm3::Jet j(dim, order);
  for (double& c : j.coefficients()) c = rng.uniform(-1, 1);
  return j;
}

void BM_JetMultiply(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  const int order = static_cast<int>(state.range(1));
  const acm3::Jet a = seeded_jet(dim, order, 1), b = seeded_jet(dim, order, 2);
  for (auto _ : state) benchmark::DoNotOptimize(a * b);
}
BENCHMARK(BM_JetMultiply)->ArgsProduct({{7, 11}, {1, 2, 3}});

void BM_JetReciprocal(benchmark::State& state) {
  const auto dim = static_cast<std::size_t>(state.range(0));
  acm3::Jet a = seeded_jet(dim, 3, 3);
  a += 4.0;
  for (auto _ : state) benchmark::DoNotOptimize(acm3::reciprocal(a));
}
BENCHMARK(BM_JetReciprocal)->Arg(7)->Arg(11);

}  // namespace
