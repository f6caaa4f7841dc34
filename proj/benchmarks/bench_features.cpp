#include <benchmark/benchmark.h>

#include <map>

#include "hatemonger/aggregate.hpp"
#include "hatemonger/diffusion.hpp"
#include "hatemonger/graph_stats.hpp"
#include "hatemonger/synth.hpp"

namespace {

const hm::Dataset& dataset(std::size_t n) {
  static std::map<std::size_t, hm::Dataset> cache;
  auto it = cache.find(n);
  if (it == cache.end()) {
    hm::SynthConfig c;
    c.n_users = n;
    c.p_in = 20.0 / static_cast<double>(n);
    c.p_out = 2.0 / static_cast<double>(n);
    it = cache.emplace(n, hm::generate(c).dataset).first;
  }
  return it->second;
}

void BM_BuildFeatures(benchmark::State& state) {
  const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
  const auto mode = static_cast<hm::FeatureMode>(state.range(1));
  for (auto _ : state) {
    auto fm = hm::build_features(d, mode, {}, hm::Threads{1});
    benchmark::DoNotOptimize(fm.values.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.total_posts()));
}
BENCHMARK(BM_BuildFeatures)
    ->ArgsProduct({{1000, 10000}, {static_cast<int>(hm::FeatureMode::relational),
                                   static_cast<int>(hm::FeatureMode::multimodal)}})
    ->Unit(benchmark::kMillisecond);

void BM_DegrootStep(benchmark::State& state) {
  const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
  const hm::DiffusionGraph g(d.graph(), hm::Direction::undirected);
  const auto b = hm::degroot_init(d, {}, hm::SeedMode::fraction);
  for (auto _ : state) {
    auto next = hm::degroot_step(g, b, hm::Threads{1});
    benchmark::DoNotOptimize(next.data());
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(d.graph().edge_count()));
}
BENCHMARK(BM_DegrootStep)->Arg(1000)->Arg(10000)->Unit(benchmark::kMicrosecond);

void BM_Clustering(benchmark::State& state) {
  const auto& d = dataset(static_cast<std::size_t>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(hm::clustering_coefficient(d.graph(), hm::Threads{1}));
}
BENCHMARK(BM_Clustering)->Arg(1000)->Arg(10000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
