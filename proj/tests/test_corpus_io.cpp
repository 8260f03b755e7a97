#include <doctest.h>

#include <random>

#include "corpkit/corpus_io.hpp"
#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"
#include "test_support.hpp"

using namespace corpkit;
using testsup::TempDir;

TEST_SUITE_BEGIN("corpus_io");

TEST_CASE("jsonl: three records load in file order") {
  TempDir tmp("jsonl-order");
  testsup::write_text(tmp.file("c.jsonl"),
                      "{\"id\":\"x\",\"text\":\"one\"}\n"
                      "{\"id\":\"y\",\"text\":\"two\"}\n"
                      "{\"id\":\"z\",\"text\":\"three\"}\n");
  auto src = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl);
  auto docs = drain(*src);
  REQUIRE(docs.size() == 3);
  CHECK(docs[0].id == "x");
  CHECK(docs[1].id == "y");
  CHECK(docs[2].id == "z");
  CHECK(docs[0].source == "c");
}

TEST_CASE("jsonl: record fields honored, defaults applied") {
  TempDir tmp("jsonl-fields");
  testsup::write_text(
      tmp.file("c.jsonl"),
      "{\"text\":\"bez ida\",\"lang\":\"sr\",\"source\":\"orig\"}\n");
  LoaderOptions options;
  options.default_lang = Lang::mixed;
  auto src = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl, options);
  auto docs = drain(*src);
  REQUIRE(docs.size() == 1);
  CHECK(docs[0].id == "c:1");
  CHECK(docs[0].lang == Lang::sr);
  CHECK(docs[0].source == "orig");
}

TEST_CASE("textdir: lexicographic filename order") {
  TempDir tmp("textdir-order");
  testsup::write_text(tmp.file("b.txt"), "drugi");
  testsup::write_text(tmp.file("a.txt"), "prvi");
  auto src = open_corpus(tmp.path(), CorpusFormat::textdir);
  auto docs = drain(*src);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "a");
  CHECK(docs[1].id == "b");
}

TEST_CASE("missing text field names the line") {
  TempDir tmp("jsonl-missing");
  testsup::write_text(tmp.file("c.jsonl"),
                      "{\"id\":\"1\",\"text\":\"ok\"}\n"
                      "{\"id\":\"2\",\"text\":\"ok too\"}\n"
                      "{\"id\":\"3\"}\n");
  auto src = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl);
  CHECK(src->next());
  CHECK(src->next());
  CHECK_THROWS_WITH_AS(src->next(),
                       doctest::Contains("line 3: missing field text"),
                       Error);
}

TEST_CASE("skip mode warns and counts instead of failing") {
  TempDir tmp("jsonl-skip");
  testsup::write_text(tmp.file("c.jsonl"),
                      "{\"id\":\"1\",\"text\":\"ok\"}\n"
                      "not json at all\n"
                      "{\"id\":\"1\",\"text\":\"duplicate id\"}\n"
                      "{\"id\":\"2\",\"text\":\"fine\"}\n");
  LoaderOptions options;
  options.skip_malformed = true;
  auto src = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl, options);
  auto docs = drain(*src);
  REQUIRE(docs.size() == 2);
  CHECK(docs[0].id == "1");
  CHECK(docs[1].id == "2");
  CHECK(src->skipped() == 2);
}

TEST_CASE("empty text rejected unless allowed") {
  TempDir tmp("jsonl-empty");
  testsup::write_text(tmp.file("c.jsonl"), "{\"id\":\"1\",\"text\":\"\"}\n");
  auto strict = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl);
  CHECK_THROWS_AS(strict->next(), Error);
  LoaderOptions options;
  options.allow_empty_text = true;
  auto lax = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl, options);
  CHECK(drain(*lax).size() == 1);
}

TEST_CASE("unreadable path is a fatal error naming it") {
  CHECK_THROWS_WITH_AS(
      open_corpus("/nonexistent/corpus.jsonl", CorpusFormat::jsonl),
      doctest::Contains("/nonexistent/corpus.jsonl"), Error);
}

TEST_CASE("invalid lang value is malformed") {
  TempDir tmp("jsonl-lang");
  testsup::write_text(tmp.file("c.jsonl"),
                      "{\"id\":\"1\",\"text\":\"x\",\"lang\":\"xx\"}\n");
  auto src = open_corpus(tmp.file("c.jsonl"), CorpusFormat::jsonl);
  CHECK_THROWS_WITH_AS(src->next(), doctest::Contains("invalid lang"), Error);
}

TEST_CASE("count_words: empty stream and direct counts") {
  VectorSource empty({});
  CHECK(count_words(empty) == 0);
  VectorSource one({testsup::doc("a", "a b c")});
  CHECK(count_words(one) == 3);
}

TEST_CASE("count_words: two synthetic 1000-token documents") {
  auto vocab = testsup::make_vocab(200, "w");
  std::vector<Document> docs;
  for (int d = 0; d < 2; ++d) {
    std::vector<std::string> words;
    for (int i = 0; i < 1000; ++i) words.push_back(vocab[i % vocab.size()]);
    docs.push_back(testsup::doc("d" + std::to_string(d),
                                testsup::join_words(words)));
  }
  VectorSource src(docs);
  CHECK(count_words(src) == 2000);
}

TEST_CASE("count_words is additive over stream concatenation") {
  std::mt19937_64 rng(99);
  auto vocab = testsup::make_vocab(50, "v");
  auto make_docs = [&](int count, const char* tag) {
    std::vector<Document> docs;
    for (int i = 0; i < count; ++i) {
      auto words = testsup::zipf_tokens(
          testsup::uniform_below(rng, 40) + 1, vocab, 1.1, rng());
      docs.push_back(testsup::doc(std::string(tag) + std::to_string(i),
                                  testsup::join_words(words)));
    }
    return docs;
  };
  auto a = make_docs(7, "a");
  auto b = make_docs(5, "b");
  std::vector<Document> both = a;
  both.insert(both.end(), b.begin(), b.end());
  CHECK(count_words(both) == count_words(a) + count_words(b));
}

TEST_CASE("textdir write-load roundtrip is content-stable") {
  std::mt19937_64 rng(123);
  std::vector<Document> docs;
  for (int i = 0; i < 12; ++i) {
    std::string text = "tekst broj " + std::to_string(rng() % 1000) +
                       " šđž уопште";
    docs.push_back(testsup::doc("doc" + std::to_string(i), text));
  }
  TempDir tmp("textdir-roundtrip");
  write_textdir(tmp.path() / "out", docs);
  auto src = open_corpus(tmp.path() / "out", CorpusFormat::textdir);
  auto loaded = drain(*src);
  REQUIRE(loaded.size() == docs.size());
  std::sort(docs.begin(), docs.end(),
            [](const Document& a, const Document& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < docs.size(); ++i) {
    CHECK(loaded[i].id == docs[i].id);
    CHECK(loaded[i].text == docs[i].text);
  }
}

TEST_CASE("corpus classification enums round-trip") {
  for (CorpusOrigin origin :
       {CorpusOrigin::web, CorpusOrigin::textbook, CorpusOrigin::literary,
        CorpusOrigin::synthetic, CorpusOrigin::mixed})
    CHECK(parse_origin(to_string(origin)) == origin);
  for (CorpusForm form :
       {CorpusForm::plain, CorpusForm::annotated, CorpusForm::parallel})
    CHECK(parse_form(to_string(form)) == form);
  CHECK_FALSE(parse_origin("nonsense").has_value());
  CHECK_FALSE(parse_form("nonsense").has_value());
  for (Lang lang : {Lang::sr, Lang::hr, Lang::bs, Lang::cnr, Lang::sh,
                    Lang::mixed, Lang::unknown})
    CHECK(parse_lang(to_string(lang)) == lang);

  CorpusMeta meta{"srWaC", Lang::sr, CorpusOrigin::web, CorpusForm::plain,
                  493'000'000};
  CHECK(meta.word_count == 493'000'000);
}

TEST_CASE("textdir: invalid UTF-8 file is rejected") {
  TempDir tmp("textdir-utf8");
  std::string bad = "dobar deo ";
  bad.push_back(static_cast<char>(0xFE));
  testsup::write_text(tmp.file("x.txt"), bad);
  auto src = open_corpus(tmp.path(), CorpusFormat::textdir);
  CHECK_THROWS_WITH_AS(src->next(), doctest::Contains("invalid UTF-8"), Error);
}

TEST_SUITE_END();
