#include <doctest.h>

#include <random>
#include <sstream>

#include "corpkit/dedup.hpp"
#include "corpkit/error.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace corpkit;
using testsup::doc;
using testsup::join_words;
using testsup::make_vocab;

namespace {

// Token range helper: t(10, 3, "a") = "a10 a11 a12".
std::vector<std::string> token_range(int from, int count,
                                     const std::string& prefix) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i)
    out.push_back(prefix + std::to_string(from + i));
  return out;
}

std::vector<std::string> kept_ids(const std::vector<Document>& docs,
                                  const DedupConfig& config) {
  Deduplicator dedup(config);
  std::vector<std::string> kept;
  for (const Document& d : docs)
    if (dedup.offer(d)) kept.push_back(d.id);
  return kept;
}

// Stream generator with engineered overlaps: documents copy contiguous
// segments of earlier documents and append fresh tails.
std::vector<Document> overlap_stream(int count, int max_tokens,
                                     std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<std::vector<std::string>> texts;
  std::vector<Document> docs;
  int fresh = 0;
  for (int i = 0; i < count; ++i) {
    std::vector<std::string> words;
    std::uint64_t kind = testsup::uniform_below(rng, 10);
    if (i > 3 && kind < 2) {
      // full duplicate of an earlier document
      words = texts[testsup::uniform_below(rng, texts.size())];
    } else if (i > 3 && kind < 7) {
      // segment of an earlier document plus a fresh tail
      const auto& base = texts[testsup::uniform_below(rng, texts.size())];
      if (!base.empty()) {
        std::size_t start = testsup::uniform_below(rng, base.size());
        std::size_t len =
            testsup::uniform_below(rng, base.size() - start) + 1;
        words.assign(base.begin() + start, base.begin() + start + len);
      }
      std::uint64_t tail = testsup::uniform_below(rng, max_tokens / 2);
      for (std::uint64_t t = 0; t < tail; ++t)
        words.push_back("f" + std::to_string(fresh++));
    } else {
      // fresh document, possibly empty or shorter than one shingle
      std::uint64_t len = testsup::uniform_below(rng, max_tokens + 1);
      for (std::uint64_t t = 0; t < len; ++t)
        words.push_back("f" + std::to_string(fresh++));
    }
    texts.push_back(words);
    docs.push_back(doc("d" + std::to_string(i), join_words(words)));
  }
  return docs;
}

}  // namespace

TEST_SUITE_BEGIN("dedup");

TEST_CASE("shingles: too-short document yields empty set") {
  CHECK(shingles(doc("x", "a b c d"), 6).empty());
}

TEST_CASE("shingles: window count by hand") {
  // "a b c" with n=2: windows (a b), (b c)
  CHECK(shingles(doc("x", "a b c"), 2).size() == 2);
}

TEST_CASE("shingles: identical windows collapse (set semantics)") {
  CHECK(shingles(doc("x", "a a a a"), 2).size() == 1);
}

TEST_CASE("shingles are tokenization-based, not byte-based") {
  CHECK(shingles("Ko je, uslov!", 2) == shingles("ko JE uslov", 2));
}

TEST_CASE("hash_bits masks shingle values") {
  DedupConfig config;
  config.ngram = 2;
  config.hash_bits = 12;
  auto sig = signature("jedan dva tri cetiri pet sest", config);
  for (std::uint64_t h : sig.shingles) CHECK(h <= 0xFFFull);
}

TEST_CASE("duplication_ratio: empty index") {
  ShingleIndex index;
  CHECK(duplication_ratio(doc("x", "bilo koji tekst ovde"), index, 2) == 0.0);
}

TEST_CASE("duplication_ratio: full containment and exact fractions") {
  ShingleIndex index;
  auto base = shingles("a b c d e f g h i j k", 2);
  for (auto h : base) index.insert(h);
  CHECK(duplication_ratio(doc("x", "a b c d e f g h i j k"), index, 2) == 1.0);

  // 10 distinct 1-grams, 8 in the index
  ShingleIndex index1;
  for (auto h : shingles("w1 w2 w3 w4 w5 w6 w7 w8", 1)) index1.insert(h);
  auto sh = shingles("w1 w2 w3 w4 w5 w6 w7 w8 x1 x2", 1);
  CHECK(duplication_ratio(sh, index1) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("dedup_stream: exact duplicate dropped at ratio 1.0") {
  std::vector<Document> docs = {
      doc("a", "jedan dva tri cetiri pet sest sedam osam"),
      doc("copy", "jedan dva tri cetiri pet sest sedam osam"),
  };
  DedupConfig config;
  config.ngram = 6;
  CHECK(kept_ids(docs, config) == std::vector<std::string>{"a"});
}

TEST_CASE("dedup_stream: disjoint vocabularies all kept") {
  std::vector<Document> docs;
  for (int i = 0; i < 5; ++i) {
    auto words = token_range(i * 100, 50, "w");
    docs.push_back(doc("d" + std::to_string(i), join_words(words)));
  }
  DedupConfig config;
  CHECK(kept_ids(docs, config).size() == 5);
}

TEST_CASE("dedup_stream: zero-shingle documents are kept") {
  std::vector<Document> docs = {
      doc("long", join_words(token_range(0, 30, "w"))),
      doc("short", "w0 w1 w2"),  // 3 tokens < 6, ratio 0
      doc("empty", ""),
  };
  DedupConfig config;
  auto kept = kept_ids(docs, config);
  CHECK(kept == std::vector<std::string>{"long", "short", "empty"});
}

TEST_CASE("threshold semantics: ratio exactly 0.75 kept, 0.76 dropped (n=6)") {
  DedupConfig config;  // ngram 6, threshold 0.75
  // A has 80 tokens = 75 windows; B copies all 80 and appends 25 fresh
  // tokens: 100 windows of which exactly 75 are already indexed.
  auto a_words = token_range(0, 80, "a");
  std::vector<std::string> b_words = a_words;
  auto b_tail = token_range(0, 25, "fresh");
  b_words.insert(b_words.end(), b_tail.begin(), b_tail.end());
  {
    std::vector<Document> docs = {doc("A", join_words(a_words)),
                                  doc("B", join_words(b_words))};
    // exact-set oracle agrees the ratio is exactly 0.75
    oracle::ExactDedup oracle_run(6, 0.75);
    CHECK(oracle_run.kept_ids(docs) == std::vector<std::string>{"A", "B"});
    CHECK(kept_ids(docs, config) == std::vector<std::string>{"A", "B"});
  }
  // A' has 81 tokens = 76 windows; C copies all 81 and appends 24 fresh:
  // 100 windows, 76 indexed → 0.76, strictly over the threshold.
  auto a2_words = token_range(0, 81, "u");
  std::vector<std::string> c_words = a2_words;
  auto c_tail = token_range(0, 24, "gnew");
  c_words.insert(c_words.end(), c_tail.begin(), c_tail.end());
  {
    std::vector<Document> docs = {doc("A", join_words(a2_words)),
                                  doc("C", join_words(c_words))};
    oracle::ExactDedup oracle_run(6, 0.75);
    CHECK(oracle_run.kept_ids(docs) == std::vector<std::string>{"A"});
    CHECK(kept_ids(docs, config) == std::vector<std::string>{"A"});
  }
}

TEST_CASE("threshold semantics with n=1") {
  DedupConfig config;
  config.ngram = 1;
  // 75 of 100 distinct tokens seen → 0.75 → kept
  auto a = token_range(0, 75, "t");
  std::vector<std::string> b = a;
  auto b_tail = token_range(0, 25, "n");
  b.insert(b.end(), b_tail.begin(), b_tail.end());
  CHECK(kept_ids({doc("A", join_words(a)), doc("B", join_words(b))}, config) ==
        std::vector<std::string>{"A", "B"});
  // 19 of 25 → 0.76 → dropped
  auto a2 = token_range(0, 19, "v");
  std::vector<std::string> c = a2;
  auto c_tail = token_range(0, 6, "m");
  c.insert(c.end(), c_tail.begin(), c_tail.end());
  CHECK(kept_ids({doc("A", join_words(a2)), doc("C", join_words(c))},
                 config) == std::vector<std::string>{"A"});
}

TEST_CASE("oracle equivalence on 500 documents with engineered overlaps") {
  auto docs = overlap_stream(500, 120, 20240502);
  DedupConfig config;
  config.ngram = 6;
  config.threshold = 0.75;
  auto kept = kept_ids(docs, config);
  oracle::ExactDedup oracle_run(6, 0.75);
  auto expected = oracle_run.kept_ids(docs);
  CHECK(kept == expected);
  // the fixture must actually exercise drops
  CHECK(kept.size() < docs.size());
  CHECK(kept.size() > 0);
}

TEST_CASE("determinism: identical stream and config give identical output") {
  auto docs = overlap_stream(120, 80, 7);
  DedupConfig config;
  auto run = [&] {
    Deduplicator dedup(config);
    std::string out;
    for (const Document& d : docs)
      if (dedup.offer(d)) out += d.id + "\n" + d.text + "\n";
    std::ostringstream csv;
    write_report_csv(dedup.report(), csv);
    return out + csv.str();
  };
  CHECK(run() == run());
}

TEST_CASE("idempotence: re-running on kept output drops nothing") {
  auto docs = overlap_stream(200, 100, 11);
  DedupConfig config;
  Deduplicator first(config);
  std::vector<Document> kept;
  for (const Document& d : docs)
    if (first.offer(d)) kept.push_back(d);
  Deduplicator second(config);
  for (const Document& d : kept) CHECK(second.offer(d));
}

TEST_CASE("threshold monotonicity holds on feedback-free streams") {
  // Mixture documents copy segments of root documents only, with a unique
  // separator token between segments, so every document's ratio is
  // independent of other mixtures' keep/drop fates.
  std::mt19937_64 rng(31);
  const int n = 6;
  std::vector<std::vector<std::string>> roots;
  std::vector<Document> docs;
  for (int r = 0; r < 8; ++r) {
    roots.push_back(token_range(r * 1000, 150, "r"));
    docs.push_back(doc("root" + std::to_string(r), join_words(roots.back())));
  }
  int unique_id = 0;
  for (int m = 0; m < 60; ++m) {
    std::vector<std::string> words;
    int segments = 1 + static_cast<int>(testsup::uniform_below(rng, 4));
    for (int s = 0; s < segments; ++s) {
      const auto& root = roots[testsup::uniform_below(rng, roots.size())];
      std::size_t start = testsup::uniform_below(rng, root.size() - n);
      std::size_t len = n + testsup::uniform_below(rng, root.size() - start - n + 1);
      words.insert(words.end(), root.begin() + start,
                   root.begin() + start + len);
      words.push_back("sep" + std::to_string(unique_id++));
    }
    std::uint64_t fresh = testsup::uniform_below(rng, 60);
    for (std::uint64_t f = 0; f < fresh; ++f)
      words.push_back("q" + std::to_string(unique_id++));
    docs.push_back(doc("mix" + std::to_string(m), join_words(words)));
  }

  std::size_t previous = 0;
  for (double threshold : {0.1, 0.3, 0.5, 0.75, 0.9, 1.0}) {
    DedupConfig config;
    config.ngram = n;
    config.threshold = threshold;
    std::size_t count = kept_ids(docs, config).size();
    CHECK(count >= previous);
    previous = count;
  }
}

TEST_CASE("threshold monotonicity can fail under kept-document feedback") {
  // Raising the threshold keeps B, whose shingles then push C and D over it;
  // with the lower threshold B is dropped and C and D survive. The invariant
  // only holds when overlaps never route through conditionally-kept
  // documents, as in the feedback-free case above.
  DedupConfig low, high;
  low.ngram = high.ngram = 1;
  low.threshold = 0.3;
  high.threshold = 0.6;

  std::vector<std::string> a = token_range(0, 100, "a");
  std::vector<std::string> b = token_range(0, 50, "a");
  auto b_tail = token_range(0, 50, "b");
  b.insert(b.end(), b_tail.begin(), b_tail.end());  // 0.5 vs A

  auto make_mix = [](std::vector<std::string> a_part,
                     std::vector<std::string> b_part, const char* tag) {
    std::vector<std::string> words = std::move(a_part);
    words.insert(words.end(), b_part.begin(), b_part.end());
    auto fresh = token_range(0, 15, tag);
    words.insert(words.end(), fresh.begin(), fresh.end());
    return words;  // 10 + 25 + 15 = 50 tokens
  };
  auto c = make_mix(token_range(0, 10, "a"), token_range(0, 25, "b"), "cf");
  auto d = make_mix(token_range(10, 10, "a"), token_range(25, 25, "b"), "df");

  std::vector<Document> docs = {
      doc("A", join_words(a)), doc("B", join_words(b)),
      doc("C", join_words(c)), doc("D", join_words(d))};

  auto kept_low = kept_ids(docs, low);
  auto kept_high = kept_ids(docs, high);
  CHECK(kept_low == std::vector<std::string>{"A", "C", "D"});
  CHECK(kept_high == std::vector<std::string>{"A", "B"});
  CHECK(kept_low.size() > kept_high.size());
}

TEST_CASE("report: per-row and total accounting") {
  Deduplicator dedup(DedupConfig{});
  CHECK(dedup.offer(join_words(token_range(0, 100, "x")), "src1"));
  CHECK(dedup.offer(join_words(token_range(0, 300, "y")), "src2"));
  CHECK_FALSE(dedup.offer(join_words(token_range(0, 100, "x")), "src2"));
  DedupReport report = dedup.report();
  REQUIRE(report.rows.size() == 2);
  CHECK(report.rows[0].source == "src1");
  CHECK(report.rows[0].words_before == 100);
  CHECK(report.rows[0].words_after == 100);
  CHECK(report.rows[1].words_before == 400);
  CHECK(report.rows[1].words_after == 300);
  CHECK(report.total_words_before == 500);
  CHECK(report.total_words_after == 400);
  CHECK(report.rows[0].share_percent == doctest::Approx(25.0));
  CHECK(report.rows[1].share_percent == doctest::Approx(75.0));
  for (const DedupRow& row : report.rows)
    CHECK(row.words_after <= row.words_before);
  double share_sum = 0;
  for (const DedupRow& row : report.rows) share_sum += row.share_percent;
  CHECK(share_sum == doctest::Approx(100.0).epsilon(0.001));
}

TEST_CASE("share table: single source is 100.00%") {
  Deduplicator dedup(DedupConfig{});
  dedup.offer(join_words(token_range(0, 100, "w")), "only");
  std::ostringstream csv;
  write_report_csv(dedup.report(), csv);
  CHECK(csv.str().find("only,100,100,100.00") != std::string::npos);
}

TEST_CASE("share table: two sources at 300 and 100 words after") {
  DedupReport report;
  report.rows = {{"big", 350, 300, 0}, {"small", 120, 100, 0}};
  // shares are computed by the deduplicator normally; emulate via offers
  Deduplicator dedup(DedupConfig{});
  dedup.offer(join_words(token_range(0, 300, "b")), "big");
  dedup.offer(join_words(token_range(0, 100, "s")), "small");
  DedupReport computed = dedup.report();
  CHECK(computed.rows[0].share_percent == doctest::Approx(75.0));
  CHECK(computed.rows[1].share_percent == doctest::Approx(25.0));
  std::ostringstream csv;
  write_report_csv(computed, csv);
  CHECK(csv.str().find(",75.00") != std::string::npos);
  CHECK(csv.str().find(",25.00") != std::string::npos);
}

TEST_CASE("share table: totals row renders at paper scale (format only)") {
  DedupReport report;
  report.rows = {{"first", 20000, 12000, 0}, {"second", 8095, 6641, 0}};
  report.total_words_before = 28095;
  report.total_words_after = 18641;
  for (DedupRow& row : report.rows)
    row.share_percent = 100.0 * static_cast<double>(row.words_after) /
                        static_cast<double>(report.total_words_after);
  std::string table = format_share_table(report);
  CHECK(table.find("28095") != std::string::npos);
  CHECK(table.find("18641") != std::string::npos);
  CHECK(table.find("100.00%") != std::string::npos);
  CHECK(table.find("processing order: first, second") != std::string::npos);
  std::ostringstream csv;
  write_report_csv(report, csv);
  CHECK(csv.str().find("total,28095,18641,100.00") != std::string::npos);
}

TEST_CASE("config validation") {
  DedupConfig bad;
  bad.ngram = 0;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = DedupConfig{};
  bad.threshold = 1.5;
  CHECK_THROWS_AS(bad.validate(), Error);
  bad = DedupConfig{};
  bad.hash_bits = 65;
  CHECK_THROWS_AS(bad.validate(), Error);
}

TEST_SUITE_END();
