#include <doctest.h>

#include <random>
#include <sstream>

#include "corpkit/error.hpp"
#include "corpkit/freq.hpp"
#include "test_support.hpp"

using namespace corpkit;
using testsup::doc;
using testsup::join_words;

TEST_SUITE_BEGIN("freq");

TEST_CASE("sample_excerpt: corpus of exactly the requested size") {
  std::vector<std::string> words;
  for (int i = 0; i < 1000; ++i) words.push_back("w" + std::to_string(i));
  VectorSource src({doc("a", join_words(words))});
  ExcerptSpec spec;
  spec.size_words = 1000;
  TokenStream excerpt = sample_excerpt(src, spec);
  CHECK(excerpt.size() == 1000);
  CHECK(excerpt.front() == "w0");
  CHECK(excerpt.back() == "w999");
}

TEST_CASE("sample_excerpt: head truncates the final document") {
  // 600k + 600k tokens, 1M excerpt → whole first + first 400k of second
  std::vector<std::string> first, second;
  first.reserve(600000);
  second.reserve(600000);
  for (int i = 0; i < 600000; ++i) {
    first.push_back("a" + std::to_string(i));
    second.push_back("b" + std::to_string(i));
  }
  VectorSource src({doc("1", join_words(first)), doc("2", join_words(second))});
  ExcerptSpec spec;  // 1,000,000
  TokenStream excerpt = sample_excerpt(src, spec);
  REQUIRE(excerpt.size() == 1000000);
  CHECK(excerpt[599999] == "a599999");
  CHECK(excerpt[600000] == "b0");
  CHECK(excerpt.back() == "b399999");
}

TEST_CASE("sample_excerpt: insufficient tokens names the available count") {
  std::vector<std::string> words(500000, "w");
  VectorSource src({doc("a", join_words(words))});
  ExcerptSpec spec;  // 1,000,000
  CHECK_THROWS_WITH_AS(sample_excerpt(src, spec),
                       "corpus has 500000 < 1000000 tokens", Error);
}

TEST_CASE("sample_excerpt: allow_short accepts smaller corpora") {
  VectorSource src({doc("a", "samo tri reči")});
  ExcerptSpec spec;
  spec.size_words = 10;
  spec.allow_short = true;
  CHECK(sample_excerpt(src, spec).size() == 3);
}

TEST_CASE("sample_excerpt: head is deterministic, shuffled is seeded") {
  auto make_docs = [] {
    std::vector<Document> docs;
    for (int i = 0; i < 20; ++i) {
      std::vector<std::string> words(25, "d" + std::to_string(i));
      docs.push_back(doc("d" + std::to_string(i), join_words(words)));
    }
    return docs;
  };
  ExcerptSpec head;
  head.size_words = 300;
  VectorSource a(make_docs()), b(make_docs());
  CHECK(sample_excerpt(a, head) == sample_excerpt(b, head));

  ExcerptSpec shuffled;
  shuffled.size_words = 300;
  shuffled.strategy = ExcerptSpec::Strategy::shuffled;
  shuffled.seed = 42;
  VectorSource c(make_docs()), d(make_docs());
  TokenStream s1 = sample_excerpt(c, shuffled);
  TokenStream s2 = sample_excerpt(d, shuffled);
  CHECK(s1 == s2);

  shuffled.seed = 43;
  VectorSource e(make_docs());
  CHECK(sample_excerpt(e, shuffled) != s1);

  // shuffling permutes whole documents: runs of 25 identical tokens
  for (std::size_t i = 0; i < s1.size(); i += 25) {
    for (std::size_t j = 1; j < 25; ++j) CHECK(s1[i + j] == s1[i]);
  }
}

TEST_CASE("frequency_table: direct counts") {
  FrequencyProfile p = frequency_table({"a", "b", "a"}, "t");
  CHECK(p.total_tokens == 3);
  CHECK(p.counts.at("a") == 2);
  CHECK(p.counts.at("b") == 1);
}

TEST_CASE("frequency_table: empty") {
  FrequencyProfile p = frequency_table({}, "t");
  CHECK(p.total_tokens == 0);
  CHECK(p.counts.empty());
}

TEST_CASE("frequency_table: Zipf sample counts sum to the sample size") {
  auto vocab = testsup::make_vocab(5000, "z");
  auto tokens = testsup::zipf_tokens(100000, vocab, 1.05, 99);
  FrequencyProfile p = frequency_table(tokens, "zipf");
  CHECK(p.total_tokens == 100000);
  std::uint64_t sum = 0;
  for (const auto& [word, count] : p.counts) sum += count;
  CHECK(sum == 100000);
}

TEST_CASE("top_k: small vocabulary returns everything") {
  FrequencyProfile p = frequency_table({"a", "b", "c"}, "t");
  CHECK(top_k(p, 1000).size() == 3);
}

TEST_CASE("top_k: tie at the boundary broken lexicographically") {
  FrequencyProfile p;
  p.corpus_name = "t";
  p.total_tokens = 11;
  p.counts = {{"a", 5}, {"b", 5}, {"c", 1}};
  CHECK(top_k(p, 2) == std::vector<std::string>{"a", "b"});

  FrequencyProfile q;
  q.corpus_name = "t";
  q.total_tokens = 19;
  q.counts = {{"b", 5}, {"a", 5}, {"c", 9}};
  CHECK(top_k(q, 2) == std::vector<std::string>{"c", "a"});
}

TEST_CASE("top_k: prefix-stable ranking") {
  auto vocab = testsup::make_vocab(300, "p");
  auto tokens = testsup::zipf_tokens(20000, vocab, 1.2, 4242);
  FrequencyProfile p = frequency_table(tokens, "t");
  auto k50 = top_k(p, 50);
  auto k200 = top_k(p, 200);
  REQUIRE(k50.size() == 50);
  for (std::size_t i = 0; i < k50.size(); ++i) CHECK(k50[i] == k200[i]);
}

TEST_CASE("per_million: definition at exact scale") {
  FrequencyProfile p;
  p.corpus_name = "t";
  p.total_tokens = 1000000;
  p.counts = {{"reč", 5}};
  CHECK(per_million(p, "reč") == 5.0);
  CHECK(per_million(p, "nema") == 0.0);
}

TEST_CASE("per_million: scales with total") {
  FrequencyProfile p;
  p.corpus_name = "t";
  p.total_tokens = 500000;
  p.counts = {{"x", 3}};
  CHECK(per_million(p, "x") == 6.0);
}

TEST_CASE("per_million: zero-token profile is an error") {
  FrequencyProfile p;
  p.corpus_name = "t";
  CHECK_THROWS_AS(per_million(p, "x"), Error);
}

TEST_CASE("per_million over the vocabulary sums to one million") {
  auto vocab = testsup::make_vocab(700, "s");
  auto tokens = testsup::zipf_tokens(50000, vocab, 1.1, 17);
  FrequencyProfile p = frequency_table(tokens, "t");
  double sum = 0;
  for (const auto& [word, count] : p.counts) sum += per_million(p, word);
  CHECK(sum == doctest::Approx(1000000.0).epsilon(1e-6));
}

TEST_CASE("build_top computes per-million for the top words") {
  FrequencyProfile p = frequency_table({"a", "a", "b", "c"}, "t");
  build_top(p, 2);
  REQUIRE(p.top.size() == 2);
  CHECK(p.top[0].first == "a");
  CHECK(p.top[0].second == doctest::Approx(500000.0));
  CHECK(p.top[1].first == "b");
  CHECK(p.top[1].second == doctest::Approx(250000.0));
}

TEST_CASE("profile TSV roundtrip") {
  auto vocab = testsup::make_vocab(100, "w");
  auto tokens = testsup::zipf_tokens(5000, vocab, 1.3, 5);
  FrequencyProfile p = frequency_table(tokens, "corpus-x");
  build_top(p, 30);

  testsup::TempDir tmp("profile-tsv");
  std::ostringstream buf;
  write_profile_tsv(p, buf);
  testsup::write_text(tmp.file("p.tsv"), buf.str());

  TopProfile loaded = read_profile_tsv(tmp.file("p.tsv"), "corpus-x");
  REQUIRE(loaded.top.size() == p.top.size());
  for (std::size_t i = 0; i < p.top.size(); ++i) {
    CHECK(loaded.top[i].first == p.top[i].first);
    CHECK(loaded.top[i].second == doctest::Approx(p.top[i].second));
  }
}

TEST_CASE("profile TSV rejects foreign headers") {
  testsup::TempDir tmp("profile-bad");
  testsup::write_text(tmp.file("bad.tsv"), "word\tcount\nx\t1\n");
  CHECK_THROWS_AS(read_profile_tsv(tmp.file("bad.tsv"), "x"), Error);
}

TEST_SUITE_END();
