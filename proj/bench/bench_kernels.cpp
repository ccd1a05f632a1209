// Parallel kernels against their serial reference versions.
#include <benchmark/benchmark.h>

#include <random>

#include "inscribe/polygon_solver.hpp"
#include "inscribe/polyhedron.hpp"
#include "inscribe/random_instances.hpp"

using namespace inscribe;

namespace {

SeededInstance seeded(std::size_t n) {
  std::mt19937_64 rng(42 + n);
  return random_seeded_instance(n, rng);
}

template <auto Solve>
void BM_solve_all(benchmark::State& state) {
  const SeededInstance s = seeded(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(Solve(s.outer, s.inner, Tolerances{}));
}

template <auto Scan>
void BM_scan(benchmark::State& state) {
  const SeededInstance s = seeded(6);
  const PolygonInstance inst = PolygonInstance::unchecked(s.outer, s.inner, s.shift);
  const auto grid = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(Scan(inst, grid));
}

template <auto Enumerate>
void BM_enumerate(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const GeneralizedConfig cfg = random_generalized_config(static_cast<std::size_t>(state.range(0)), rng);
  for (auto _ : state) benchmark::DoNotOptimize(Enumerate(cfg.lines, cfg.points, Tolerances{}));
}

template <auto Graph>
void BM_glued(benchmark::State& state) {
  const PolyhedronGraph g = make_glued_octahedra(static_cast<int>(state.range(0)));
  const GammaSpec gamma = example1_gamma(g);
  for (auto _ : state) benchmark::DoNotOptimize(Graph(g, gamma, Tolerances{}));
}

}  // namespace

BENCHMARK(BM_solve_all<static_cast<SolutionSet (*)(const ConvexPolygon&, const std::vector<Point2>&, const Tolerances&)>(&solve_all)>)
    ->Name("solve_all/parallel")->Arg(4)->Arg(8)->Arg(16);
BENCHMARK(BM_solve_all<&reference::solve_all>)->Name("solve_all/reference")->Arg(4)->Arg(8)->Arg(16);

BENCHMARK(BM_scan<static_cast<std::vector<double> (*)(const PolygonInstance&, std::size_t)>(&brute_force_scan)>)
    ->Name("brute_force_scan/parallel")->Arg(10000)->Arg(100000);
BENCHMARK(BM_scan<&reference::brute_force_scan>)->Name("brute_force_scan/reference")->Arg(10000)->Arg(100000);

BENCHMARK(BM_enumerate<static_cast<GeneralizedResult (*)(const std::vector<Line>&, const std::vector<Point2>&,
                                                          const Tolerances&)>(&enumerate_generalized)>)
    ->Name("enumerate_generalized/parallel")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_enumerate<&reference::enumerate_generalized>)
    ->Name("enumerate_generalized/reference")->Arg(3)->Arg(4)->Unit(benchmark::kMillisecond);

BENCHMARK(BM_glued<static_cast<GraphSolveResult (*)(const PolyhedronGraph&, const GammaSpec&, const Tolerances&)>(
              &solve_graph)>)
    ->Name("solve_graph/parallel")->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_glued<&reference::solve_graph>)->Name("solve_graph/reference")->Arg(1)->Arg(3)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
