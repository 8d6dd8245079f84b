#include <benchmark/benchmark.h>

#include "acm3/canonical.hpp"
#include "acm3/models.hpp"

namespace {

// Fresh fields per iteration so the evaluation caches do not hide the cost.

void BM_SphereStructure(benchmark::State& state) {
  const int order = static_cast<int>(state.range(0));
  const acm3::ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  for (auto _ : state) {
    const acm3::Model m = acm3::make_sphere(1);
    benchmark::DoNotOptimize(m.structure.phi(0)(p, order));
  }
}
BENCHMARK(BM_SphereStructure)->DenseRange(0, 3)->Unit(benchmark::kMicrosecond);

void BM_SphereCurvature(benchmark::State& state) {
  const acm3::ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  for (auto _ : state) {
    const acm3::Model m = acm3::make_sphere(1);
    const acm3::CurvatureTensor c = acm3::riemann_curvature(acm3::levi_civita(m.structure.g()));
    benchmark::DoNotOptimize(acm3::scalar_curvature(c, m.structure.g(), p));
  }
}
BENCHMARK(BM_SphereCurvature)->Unit(benchmark::kMillisecond);

void BM_HorizontalScalarCurvature(benchmark::State& state) {
  const acm3::ChartPoint p{0.3, -0.2, 0.5, 0.1, 0.7, -0.4, 0.9};
  for (auto _ : state) {
    const acm3::Model m = acm3::make_sphere(1);
    benchmark::DoNotOptimize(acm3::sphere_nonflatness_witness(m, p));
  }
}
BENCHMARK(BM_HorizontalScalarCurvature)->Unit(benchmark::kMillisecond);

void BM_ScrambledChristoffel(benchmark::State& state) {
  const acm3::Model m = acm3::scramble(acm3::make_flat(1), 42);
  const int order = static_cast<int>(state.range(0));
  double shift = 0.0;
  for (auto _ : state) {
    // A new point each time defeats the memo cache.
    shift += 1e-9;
    const acm3::ChartPoint p{0.1 + shift, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7};
    benchmark::DoNotOptimize(acm3::christoffel(m.structure.g())(p, order));
  }
}
BENCHMARK(BM_ScrambledChristoffel)->DenseRange(0, 2)->Unit(benchmark::kMicrosecond);

void BM_DarbouxEvaluate(benchmark::State& state) {
  const acm3::Model m = acm3::scramble(acm3::make_flat(1), 42);
  const auto pts = m.sample_points(2, 7);
  const acm3::DarbouxFrame f = acm3::build_darboux_frame(m, pts[0]);
  for (auto _ : state) benchmark::DoNotOptimize(f.evaluate(pts[1]));
}
BENCHMARK(BM_DarbouxEvaluate)->Unit(benchmark::kMillisecond);

}  // namespace
