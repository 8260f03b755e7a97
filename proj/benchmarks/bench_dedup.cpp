#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "corpkit/dedup.hpp"
#include "corpkit/text.hpp"

namespace {

// Synthetic corpus of space-joined vocabulary picks, ~8 KB per document.
std::vector<std::string> make_corpus(std::size_t total_bytes,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::string> vocab;
  vocab.reserve(20000);
  for (int i = 0; i < 20000; ++i) vocab.push_back("word" + std::to_string(i));
  std::vector<std::string> docs;
  std::size_t bytes = 0;
  while (bytes < total_bytes) {
    std::string text;
    text.reserve(8500);
    while (text.size() < 8000) {
      text += vocab[rng() % vocab.size()];
      text.push_back(' ');
    }
    bytes += text.size();
    docs.push_back(std::move(text));
  }
  return docs;
}

std::size_t corpus_bytes(const std::vector<std::string>& docs) {
  std::size_t bytes = 0;
  for (const auto& d : docs) bytes += d.size();
  return bytes;
}

}  // namespace

static void BM_CountTokens(benchmark::State& state) {
  auto docs = make_corpus(16 << 20, 1);
  for (auto _ : state) {
    std::uint64_t n = 0;
    for (const auto& d : docs) n += corpkit::count_tokens(d);
    benchmark::DoNotOptimize(n);
  }
  state.SetBytesProcessed(state.iterations() * corpus_bytes(docs));
}
BENCHMARK(BM_CountTokens);

static void BM_TokenHashScan(benchmark::State& state) {
  auto docs = make_corpus(16 << 20, 2);
  for (auto _ : state) {
    std::uint64_t acc = 0;
    for (const auto& d : docs)
      corpkit::scan_token_hashes(d, [&](std::uint64_t h) { acc ^= h; });
    benchmark::DoNotOptimize(acc);
  }
  state.SetBytesProcessed(state.iterations() * corpus_bytes(docs));
}
BENCHMARK(BM_TokenHashScan);

static void BM_Signature(benchmark::State& state) {
  auto docs = make_corpus(16 << 20, 3);
  corpkit::DedupConfig config;
  config.ngram = static_cast<int>(state.range(0));
  for (auto _ : state) {
    std::size_t shingles = 0;
    for (const auto& d : docs)
      shingles += corpkit::signature(d, config).shingles.size();
    benchmark::DoNotOptimize(shingles);
  }
  state.SetBytesProcessed(state.iterations() * corpus_bytes(docs));
}
BENCHMARK(BM_Signature)->Arg(3)->Arg(6)->Arg(12);

static void BM_DedupOffer(benchmark::State& state) {
  auto docs = make_corpus(static_cast<std::size_t>(state.range(0)) << 20, 4);
  for (auto _ : state) {
    corpkit::Deduplicator dedup(corpkit::DedupConfig{});
    std::uint64_t kept = 0;
    for (const auto& d : docs) kept += dedup.offer(d, "bench") ? 1 : 0;
    benchmark::DoNotOptimize(kept);
  }
  state.SetBytesProcessed(state.iterations() * corpus_bytes(docs));
}
BENCHMARK(BM_DedupOffer)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

static void BM_ShingleIndexLookup(benchmark::State& state) {
  std::mt19937_64 rng(5);
  corpkit::ShingleIndex index;
  std::vector<std::uint64_t> present(1 << 20);
  for (auto& h : present) {
    h = rng();
    index.insert(h);
  }
  std::vector<std::uint64_t> probe(800);
  for (std::size_t i = 0; i < probe.size(); ++i)
    probe[i] = i % 2 ? present[rng() % present.size()] : rng();
  for (auto _ : state) {
    benchmark::DoNotOptimize(index.count_hits(probe));
  }
  state.SetItemsProcessed(state.iterations() * probe.size());
}
BENCHMARK(BM_ShingleIndexLookup);

BENCHMARK_MAIN();
