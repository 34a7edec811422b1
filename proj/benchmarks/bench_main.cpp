#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "poiname/analysis.hpp"
#include "poiname/corpus.hpp"
#include "poiname/embed.hpp"
#include "poiname/geo.hpp"
#include "poiname/localness.hpp"

namespace {

using namespace poiname;

std::vector<PoiRecord> synthetic_records(std::size_t regions, std::size_t per_region) {
  std::mt19937_64 gen(17);
  std::vector<std::string> words;
  for (int i = 0; i < 2000; ++i) words.push_back("w" + std::to_string(i));
  std::vector<PoiRecord> out;
  for (std::size_t r = 0; r < regions; ++r) {
    for (std::size_t i = 0; i < per_region; ++i) {
      std::string name;
      const auto n = 1 + gen() % 4;
      for (std::size_t w = 0; w < n; ++w) {
        // skewed draw: min of two uniforms favors low indices
        const auto idx = std::min(gen() % words.size(), gen() % words.size());
        name += (w ? " " : "") + words[idx];
      }
      out.push_back({name, "region" + std::to_string(r), 30.0 + r, -100.0 + r, {"Restaurants"}});
    }
  }
  return out;
}

void BM_Tokenize(benchmark::State& state) {
  const std::string name = "Joe's Pizza & Grill - Downtown (Las Vegas) #12";
  for (auto _ : state) benchmark::DoNotOptimize(tokenize(name));
  state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Tokenize);

void BM_GeoTfidf(benchmark::State& state) {
  const auto records = synthetic_records(7, static_cast<std::size_t>(state.range(0)));
  const auto corpora = partition_by_region(records, true);
  for (auto _ : state) benchmark::DoNotOptimize(geo_tfidf(corpora));
}
BENCHMARK(BM_GeoTfidf)->Arg(1000)->Arg(10000);

void BM_Vincenty(benchmark::State& state) {
  const GeoPoint a(36.17, -115.14), b(40.44, -79.99);
  for (auto _ : state) benchmark::DoNotOptimize(vincenty_distance(a, b));
}
BENCHMARK(BM_Vincenty);

void BM_TrainEpoch(benchmark::State& state) {
  const auto records = synthetic_records(7, 2000);
  const auto training = build_training_pairs(partition_by_region(records, false));
  EmbeddingConfig config;
  config.dimension = static_cast<std::size_t>(state.range(0));
  config.epochs = 1;
  for (auto _ : state) benchmark::DoNotOptimize(train(training, config));
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(training.pairs.size()));
}
BENCHMARK(BM_TrainEpoch)->Arg(50)->Arg(300)->Unit(benchmark::kMillisecond);

void BM_PermutationTest(benchmark::State& state) {
  std::mt19937_64 gen(3);
  std::normal_distribution<double> n;
  std::vector<double> x(21), y(21);
  for (std::size_t i = 0; i < x.size(); ++i) {
    x[i] = n(gen);
    y[i] = x[i] + n(gen);
  }
  const PValueOptions options{PValueMethod::permutation, 100000, 1};
  for (auto _ : state) benchmark::DoNotOptimize(pearson(x, y, options));
}
BENCHMARK(BM_PermutationTest)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
