#include <benchmark/benchmark.h>

#include "packmin/counting.hpp"
#include "packmin/families.hpp"
#include "packmin/minima.hpp"

using namespace packmin;

namespace {

void BM_ShortestVectorEquiangular(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Lattice lat = make_equiangular({n, make_rat(3), make_rat(1)});
  SymBody ball(Body::ball(make_rat(1), n));
  for (auto _ : state) benchmark::DoNotOptimize(shortest_vector(ball, lat));
}
BENCHMARK(BM_ShortestVectorEquiangular)->DenseRange(2, 6);

void BM_PackingMinimaBox(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  RatVec r;
  for (std::size_t i = 0; i < n; ++i) r.push_back(make_rat(static_cast<long>(i) + 1));
  Body box = Body::box(r);
  Lattice lat = Lattice::standard(n);
  for (auto _ : state) benchmark::DoNotOptimize(packing_minima_all(box, lat));
}
BENCHMARK(BM_PackingMinimaBox)->DenseRange(1, 4)->Unit(benchmark::kMillisecond);

void BM_SimplexLatticeRho(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  Body ball = Body::ball(make_rat(1), n);
  Lattice lat = simplex_lattice(n);
  for (auto _ : state) benchmark::DoNotOptimize(packing_minimum(ball, lat, n - 1));
}
BENCHMARK(BM_SimplexLatticeRho)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_ThreadsOnSimplexLattice(benchmark::State& state) {
  Body ball = Body::ball(make_rat(1), 5);
  Lattice lat = simplex_lattice(5);
  Options opt;
  opt.threads = static_cast<unsigned>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(packing_minima_all(ball, lat, opt));
}
BENCHMARK(BM_ThreadsOnSimplexLattice)->Arg(1)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_CountPointsDisc(benchmark::State& state) {
  Body disc = Body::ball(make_rat(state.range(0)), 2);
  Lattice lat = Lattice::standard(2);
  for (auto _ : state) benchmark::DoNotOptimize(count_points(disc, lat));
}
BENCHMARK(BM_CountPointsDisc)->Arg(10)->Arg(40);

void BM_MinimaReportTriangle(benchmark::State& state) {
  Body tri = Body::simplex({{make_rat(0), make_rat(0)}, {make_rat(3), make_rat(1)}, {make_rat(1), make_rat(4)}});
  Lattice lat = Lattice::standard(2);
  for (auto _ : state) benchmark::DoNotOptimize(minima_report(tri, lat));
}
BENCHMARK(BM_MinimaReportTriangle);

}  // namespace
BENCHMARK_MAIN();
