#include <benchmark/benchmark.h>

#include <numbers>

#include "geogap/analysis.hpp"
#include "geogap/framebundle.hpp"
#include "geogap/quadgap.hpp"

using namespace geogap;

namespace {
constexpr double pi = std::numbers::pi;
}

static void BM_SphereChristoffels(benchmark::State& state) {
  const ConnectionChart chart = make_sphere(1.0);
  const Vec x = {1.2, 0.4};
  for (auto _ : state) {
    benchmark::DoNotOptimize(christoffels_at(chart, x));
  }
}
BENCHMARK(BM_SphereChristoffels);

static void BM_GeodesicTransport(benchmark::State& state) {
  const ConnectionChart chart = make_sphere(1.0);
  const TransportState s0{{1.2, 0.0}, {0.5, 0.4}, {{0.0, 1.0}}};
  const double s = double(state.range(0)) / 1000.0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(geodesic_transport(chart, s0, s));
  }
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GeodesicTransport)->Arg(25)->Arg(100)->Arg(400)->Complexity();

static void BM_QuadVertices(benchmark::State& state) {
  const ConnectionChart chart = make_sphere(1.0);
  const FrameTriple t{{pi / 2, 0.0}, {1.0, 0.0}, {0.0, 1.0}};
  for (auto _ : state) {
    benchmark::DoNotOptimize(quad_vertices(chart, t, 0.1));
  }
}
BENCHMARK(BM_QuadVertices);

static void BM_EstimateLimit(benchmark::State& state) {
  Samples samples;
  for (const double s : geometric_ladder(0.1, 6))
    samples.emplace_back(s, Vec{0.5 * s * s * s - 0.1 * s * s * s * s,
                                -0.5 * s * s * s});
  for (auto _ : state) {
    benchmark::DoNotOptimize(estimate_limit(samples, 3));
  }
}
BENCHMARK(BM_EstimateLimit);

static void BM_BracketNumeric(benchmark::State& state) {
  const ConnectionChart chart = make_sphere(1.0);
  const FramePoint y{{1.2, 0.4}, Mat::identity(2)};
  for (auto _ : state) {
    benchmark::DoNotOptimize(bracket_numeric(chart, 0, 1, y));
  }
}
BENCHMARK(BM_BracketNumeric);

static void BM_BertrandPuiseux(benchmark::State& state) {
  const ConnectionChart chart = make_sphere(1.0);
  const auto ladder = geometric_ladder(0.1, 3);
  const int n = int(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bertrand_puiseux(chart, {pi / 2, 0.0}, ladder, n));
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_BertrandPuiseux)->Arg(64)->Arg(256)->Arg(1024)->Complexity();

BENCHMARK_MAIN();
