#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "corpkit/freq.hpp"
#include "corpkit/similarity.hpp"

namespace {

std::vector<corpkit::ProfileVector> make_vectors(std::size_t corpora,
                                                 std::size_t features,
                                                 std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<corpkit::ProfileVector> vectors;
  for (std::size_t c = 0; c < corpora; ++c) {
    corpkit::ProfileVector v;
    v.corpus_name = "c" + std::to_string(c);
    v.values.resize(features);
    for (double& x : v.values)
      x = rng() % 4 ? 0.0 : static_cast<double>(rng() % 10000) / 10.0;
    v.values[c % features] = 1.0;
    vectors.push_back(std::move(v));
  }
  return vectors;
}

}  // namespace

static void BM_CosinePow(benchmark::State& state) {
  auto vectors = make_vectors(2, static_cast<std::size_t>(state.range(0)), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        corpkit::cosine_pow(vectors[0].values, vectors[1].values, 10));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_CosinePow)->Arg(1000)->Arg(3257)->Arg(10000);

static void BM_SimilarityMatrix(benchmark::State& state) {
  auto vectors =
      make_vectors(static_cast<std::size_t>(state.range(0)), 3257, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(corpkit::similarity_matrix(vectors, 10));
  }
}
BENCHMARK(BM_SimilarityMatrix)->Arg(10)->Arg(30);

static void BM_FeatureUnion(benchmark::State& state) {
  std::mt19937_64 rng(3);
  std::vector<std::vector<std::string>> lists;
  for (int c = 0; c < 10; ++c) {
    std::vector<std::string> list;
    for (int w = 0; w < 1000; ++w)
      list.push_back("w" + std::to_string(rng() % 4000));
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
    lists.push_back(std::move(list));
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(corpkit::feature_union(lists));
  }
}
BENCHMARK(BM_FeatureUnion);

static void BM_TopK(benchmark::State& state) {
  std::mt19937_64 rng(4);
  corpkit::TokenStream tokens;
  tokens.reserve(1 << 20);
  for (std::size_t i = 0; i < (1 << 20); ++i)
    tokens.push_back("w" + std::to_string(rng() % 50000));
  corpkit::FrequencyProfile profile =
      corpkit::frequency_table(tokens, "bench");
  for (auto _ : state) {
    benchmark::DoNotOptimize(corpkit::top_k(profile, 1000));
  }
}
BENCHMARK(BM_TopK);

BENCHMARK_MAIN();
