#include <benchmark/benchmark.h>

#include "reconlab/events.hpp"
#include "reconlab/graph6.hpp"
#include "reconlab/isomorphism.hpp"
#include "reconlab/reconstruction.hpp"
#include "reconlab/sampling.hpp"

using namespace reconlab;

namespace {

Graph gnp(std::size_t n, std::uint64_t seed) { return sample_graph(EdgeProbabilities::constant(n, 0.5), {seed, n}); }

void BM_CanonicalForm(benchmark::State& state) {
  const auto g = gnp(static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalForm)->Arg(10)->Arg(20)->Arg(50)->Arg(100)->Arg(200);

void BM_CanonicalFormRegular(benchmark::State& state) {
  // circulant graphs stress refinement: every vertex looks alike
  const auto n = static_cast<std::size_t>(state.range(0));
  Graph g(n);
  for (Vertex v = 0; v < n; ++v)
    for (Vertex d : {1u, 3u}) g.add_edge(v, static_cast<Vertex>((v + d) % n));
  for (auto _ : state) benchmark::DoNotOptimize(canonical_form(g));
}
BENCHMARK(BM_CanonicalFormRegular)->Arg(16)->Arg(32)->Arg(64);

void BM_CheckEvent(benchmark::State& state) {
  const auto g = gnp(static_cast<std::size_t>(state.range(0)), 2);
  const auto delta = static_cast<std::size_t>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(check_event(g, delta));
}
BENCHMARK(BM_CheckEvent)->Args({12, 1})->Args({12, 2})->Args({20, 1})->Args({20, 2})->Args({30, 2});

void BM_BallEnumerate(benchmark::State& state) {
  const auto g = gnp(16, 3);
  const auto s = sample_edit_subset(16, static_cast<std::size_t>(state.range(0)), SeedSpec{3, 1});
  for (auto _ : state) benchmark::DoNotOptimize(check_event_ball(g, s, 1, {BallStrategy::enumerate}));
}
BENCHMARK(BM_BallEnumerate)->Arg(4)->Arg(8)->Arg(12);

void BM_BallSearch(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto g = gnp(n + 2, 4);
  const auto s = sample_edit_subset(n + 2, n * (n - 1) / 20, SeedSpec{4, 1});
  for (auto _ : state) benchmark::DoNotOptimize(check_event_ball(g, s, 2, {BallStrategy::search}));
}
BENCHMARK(BM_BallSearch)->Arg(20)->Arg(30)->Unit(benchmark::kMillisecond);

void BM_RadiusSearch(benchmark::State& state) {
  const auto g = gnp(14, 5);
  const auto r = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_event_radius(g, r, 1, {BallStrategy::search}));
}
BENCHMARK(BM_RadiusSearch)->Arg(1)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_Deck(benchmark::State& state) {
  const auto g = gnp(static_cast<std::size_t>(state.range(0)), 6);
  for (auto _ : state) benchmark::DoNotOptimize(deck(g));
}
BENCHMARK(BM_Deck)->Arg(12)->Arg(40);

void BM_SampleGraph(benchmark::State& state) {
  const auto p = EdgeProbabilities::constant(static_cast<std::size_t>(state.range(0)), 0.5);
  std::uint64_t i = 0;
  for (auto _ : state) benchmark::DoNotOptimize(sample_graph(p, {7, i++}));
}
BENCHMARK(BM_SampleGraph)->Arg(80)->Arg(400);

void BM_Graph6RoundTrip(benchmark::State& state) {
  const auto g = gnp(200, 8);
  for (auto _ : state) benchmark::DoNotOptimize(decode_graph6(encode_graph6(g)));
}
BENCHMARK(BM_Graph6RoundTrip);

}  // namespace

BENCHMARK_MAIN();
