#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <random>

#include "rconvex/geometry.hpp"
#include "rconvex/potential.hpp"
#include "rconvex/riesz.hpp"
#include "rconvex/spectra.hpp"

using namespace rconvex;

namespace {

GridSpec square_grid(double lo, double hi, int n) { return GridSpec{{lo, lo}, (hi - lo) / (n - 1), n, n}; }

CompactSet triangle() { return make_finite({Point(0, 0), Point(1, 0), Point(0.5, 0.8)}); }

spectra::Matrix hermitian(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  spectra::Matrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = {g(rng), g(rng)};
  return (m + m.adjoint()) / 2.0;
}

}  // namespace

static void BM_DistanceField(benchmark::State& state) {
  const auto e = make_segment(0.0, 1.0);
  const auto grid = square_grid(-2, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::distance_field(e, grid));
}
BENCHMARK(BM_DistanceField)->Arg(256)->Arg(512)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_ConvexHull(benchmark::State& state) {
  const auto e = triangle();
  const auto dist = geometry::distance_field(e, square_grid(-2, 3, static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::r_convex_hull(e, 0.6, dist));
}
BENCHMARK(BM_ConvexHull)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_RadiusOfConvexity(benchmark::State& state) {
  const auto e = triangle();
  const auto grid = square_grid(-2, 3, static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(geometry::radius_of_convexity(e, grid, 0.05, 1.0, grid.h / 2));
}
BENCHMARK(BM_RadiusOfConvexity)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

static void BM_GreenCollocation(benchmark::State& state) {
  const auto e = make_finite({Point(0, 0), Point(1, 0)});
  const std::vector<Point> queries = {Point(0.5, 0.5), Point(3, 0)};
  potential::CollocationOptions opts;
  opts.density = static_cast<double>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(potential::green_collocation(e, 0.05, queries, opts));
}
BENCHMARK(BM_GreenCollocation)->Arg(1)->Arg(2)->Unit(benchmark::kMillisecond);

static void BM_DiscreteRiesz(benchmark::State& state) {
  const auto e = make_segment(0.0, 1.0);
  const auto grid = square_grid(-2, 3, static_cast<int>(state.range(0)));
  auto v = geometry::distance_field(e, grid);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = 1.0 / (v[k] * v[k]);
  const auto mask = riesz::exclusion_band(e, grid, 0.05);
  for (auto _ : state) benchmark::DoNotOptimize(riesz::discrete_riesz(v, mask));
}
BENCHMARK(BM_DiscreteRiesz)->Arg(256)->Arg(1024)->Unit(benchmark::kMillisecond);

static void BM_SchattenNorm(benchmark::State& state) {
  const auto b = hermitian(static_cast<int>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(spectra::schatten_norm(b, 1.5));
}
BENCHMARK(BM_SchattenNorm)->Arg(20)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

static void BM_Eigenvalues(benchmark::State& state) {
  const spectra::MatrixOperator a(hermitian(static_cast<int>(state.range(0)), 2), spectra::Tag::SelfAdjoint);
  for (auto _ : state) benchmark::DoNotOptimize(spectra::eigenvalues(a));
}
BENCHMARK(BM_Eigenvalues)->Arg(20)->Arg(50)->Arg(200)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
