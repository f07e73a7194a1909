#include <benchmark/benchmark.h>

#include "generators.hpp"
#include "oracles.hpp"

#include "kclass/continued_fraction.hpp"
#include "kclass/graph.hpp"
#include "kclass/smith.hpp"

using namespace kclass;

static void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = oracle::random_matrix(rng, n, n, -20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(3)->Arg(5)->Arg(8)->Arg(12);

static SixTermInvariant example_row(long out) {
  SixTermInvariant s = make_sixterm({FgAbelianGroup::free(1), FgAbelianGroup::free(1), FgAbelianGroup::cyclic(3),
                                     {}, {}, {}});
  s.maps[0] = GroupHom(FgAbelianGroup::free(1), FgAbelianGroup::free(1), {{3}});
  s.maps[1] = GroupHom(FgAbelianGroup::free(1), FgAbelianGroup::cyclic(3), {{out}});
  s.cone_b = ConeDescriptor::standard_free();
  s.cone_a = ConeDescriptor::all_positive();
  return s;
}

static void BM_DecideSplitExample(benchmark::State& state) {
  const SixTermInvariant a = example_row(1), b = example_row(2);
  for (auto _ : state) benchmark::DoNotOptimize(decide_iso_one_ideal(a, b));
}
BENCHMARK(BM_DecideSplitExample);

static void BM_DecideFiniteOrbit(benchmark::State& state) {
  std::mt19937_64 rng(7);
  const gen::Ends ends{FgAbelianGroup::from_cyclic_orders({2, 4}), FgAbelianGroup::cyclic(6),
                       FgAbelianGroup::cyclic(12), FgAbelianGroup::from_cyclic_orders({2, 2})};
  const SixTermInvariant s = gen::random_sixterm(rng, ends, false);
  const SixTermInvariant t = gen::transport_randomly(rng, s);
  for (auto _ : state) benchmark::DoNotOptimize(decide_iso_one_ideal(s, t));
}
BENCHMARK(BM_DecideFiniteOrbit);

static void BM_GraphInvariant(benchmark::State& state) {
  const DirectedGraph g{{"a", "b", "c"}, IntMatrix{{2, 1, 1}, {1, 2, 0}, {0, 0, 3}}};
  for (auto _ : state) benchmark::DoNotOptimize(one_ideal_invariant(g));
}
BENCHMARK(BM_GraphInvariant);

static void BM_ContinuedFraction(benchmark::State& state) {
  const QuadraticIrrational x(3, -2, 13, 5);
  for (auto _ : state) benchmark::DoNotOptimize(cf_expansion(x));
}
BENCHMARK(BM_ContinuedFraction);

static void BM_SturmianEquivalence(benchmark::State& state) {
  const QuadraticIrrational x(-1, 1, 5, 2), y(3, -1, 5, 2);
  for (auto _ : state) benchmark::DoNotOptimize(sturmian_equivalent(x, y));
}
BENCHMARK(BM_SturmianEquivalence);

BENCHMARK_MAIN();
