#include <benchmark/benchmark.h>

#include "cooccur/backbone.hpp"
#include "cooccur/community.hpp"
#include "cooccur/corpus.hpp"
#include "cooccur/graph.hpp"
#include "cooccur/null_models.hpp"
#include "cooccur/rng.hpp"

#include "helpers/fixtures.hpp"

namespace {

cooccur::Corpus bench_corpus(std::size_t docs) {
  return fixtures::zipf_corpus(docs, 800, 4242, 1.05, 9);
}

void BM_ParseCorpus(benchmark::State& state) {
  std::vector<cooccur::RawDocument> docs;
  cooccur::Rng rng(7);
  for (int d = 0; d < 2000; ++d) {
    std::string text = "Don't miss #Vote2024 tonight, she's ready";
    for (int t = 0; t < 6; ++t) text += " " + fixtures::synthetic_word(rng.uniform_below(500));
    docs.push_back({std::to_string(d), text});
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::parse_corpus(docs, {}));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(docs.size()));
}
BENCHMARK(BM_ParseCorpus)->Unit(benchmark::kMillisecond);

void BM_BuildGraph(benchmark::State& state) {
  const auto corpus = bench_corpus(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::build_graph(corpus));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_BuildGraph)->Arg(1000)->Arg(5000)->Arg(20000)->Unit(benchmark::kMillisecond);

void BM_DisparityFilter(benchmark::State& state) {
  const auto g = cooccur::build_graph(bench_corpus(10000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::disparity_filter(g, 0.05));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_DisparityFilter)->Unit(benchmark::kMillisecond);

void BM_NoiseCorrectedFilter(benchmark::State& state) {
  const auto g = cooccur::build_graph(bench_corpus(10000));
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::noise_corrected_filter(g, 1.64));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.edge_count()));
}
BENCHMARK(BM_NoiseCorrectedFilter)->Unit(benchmark::kMillisecond);

void BM_Louvain(benchmark::State& state) {
  const auto g =
      cooccur::disparity_filter(cooccur::build_graph(bench_corpus(10000)), 0.3).graph;
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::louvain(g, seed++));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(g.node_count()));
}
BENCHMARK(BM_Louvain)->Unit(benchmark::kMillisecond);

void BM_ConfigurationModel(benchmark::State& state) {
  const auto g = cooccur::build_graph(bench_corpus(5000));
  std::uint64_t seed = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(cooccur::configuration_model(g, seed++));
  }
}
BENCHMARK(BM_ConfigurationModel)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
