#include <doctest.h>

#include <random>
#include <set>

#include "corpkit/error.hpp"
#include "corpkit/variant.hpp"
#include "test_support.hpp"

using namespace corpkit;
using testsup::doc;

namespace {

std::pair<std::vector<Document>, std::vector<Document>> run_split(
    std::vector<Document> docs, const MarkerLexicon& lexicon,
    const ClassifierConfig& config) {
  VectorSource src(std::move(docs));
  std::vector<Document> sr, hr;
  split_corpus(
      src, lexicon, config,
      [&](const Document& d, const VariantVerdict&) { sr.push_back(d); },
      [&](const Document& d, const VariantVerdict&) { hr.push_back(d); });
  return {sr, hr};
}

}  // namespace

TEST_SUITE_BEGIN("variant");

TEST_CASE("marker_votes: one-sided Serbian markers") {
  auto [sr, hr] = marker_votes({"ko", "uslov", "ko"}, MarkerLexicon::defaults());
  CHECK(sr == 3);
  CHECK(hr == 0);
}

TEST_CASE("marker_votes: one-sided Croatian markers") {
  auto [sr, hr] = marker_votes({"tko", "uvjet"}, MarkerLexicon::defaults());
  CHECK(sr == 0);
  CHECK(hr == 2);
}

TEST_CASE("marker_votes: balanced markers count both sides") {
  auto [sr, hr] =
      marker_votes({"ko", "tko", "što", "šta"}, MarkerLexicon::defaults());
  CHECK(sr == 2);
  CHECK(hr == 2);
}

TEST_CASE("je_ratio: no je") { CHECK(je_ratio("eee") == 0.0); }

TEST_CASE("je_ratio: single pair") { CHECK(je_ratio("je") == 1.0); }

TEST_CASE("je_ratio: counted by hand") {
  CHECK(je_ratio("dijete sedi") == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("je_ratio: case-insensitive, zero without any e") {
  CHECK(je_ratio("JE") == 1.0);
  CHECK(je_ratio("bez samoglasnika tog tipa") == 0.0);
  CHECK(je_ratio("") == 0.0);
}

TEST_CASE("je_ratio is always within [0,1]") {
  std::mt19937_64 rng(13);
  const std::string pool = "jejeeejjjabc jjee ee jjj e j ";
  for (int trial = 0; trial < 500; ++trial) {
    std::string text;
    for (int i = 0; i < 50; ++i)
      text.push_back(pool[testsup::uniform_below(rng, pool.size())]);
    double r = je_ratio(text);
    CHECK(r >= 0.0);
    CHECK(r <= 1.0);
  }
}

TEST_CASE("classify: one-sided evidence") {
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  VariantVerdict v =
      classify(doc("a", "ko pita uslov nosi"), lexicon, config);
  CHECK(v.label == VariantLabel::serbian);
  v = classify(doc("b", "tko pita uvjet nosi"), lexicon, config);
  CHECK(v.label == VariantLabel::croatian);
}

TEST_CASE("classify: marker-free text at je ratio 0.30 goes Croatian") {
  // jelen/jezero/jesen carry one "je" and two "e" each, plus four bare "e":
  // 3 je / 10 e = 0.30 > 0.16, no markers either way.
  Document d = doc("a", "jelen jezero jesen e e e e");
  CHECK(je_ratio(d.text) == doctest::Approx(0.30));
  VariantVerdict v = classify(d, MarkerLexicon::defaults(), {});
  CHECK(v.sr_votes == 0);
  CHECK(v.hr_votes == 0);
  CHECK(v.label == VariantLabel::croatian);
}

TEST_CASE("classify: Ijekavian vote alone decides marker-free text") {
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;  // threshold 0.16
  // "mlijeko bijelo": je x2, e x2 → ratio 1.0 > 0.16, no markers
  VariantVerdict v = classify(doc("a", "mlijeko bijelo"), lexicon, config);
  CHECK(v.sr_votes == 0);
  CHECK(v.hr_votes == 0);
  CHECK(v.je_ratio > 0.16);
  CHECK(v.label == VariantLabel::croatian);
}

TEST_CASE("classify: tie break configurations") {
  auto lexicon = MarkerLexicon::defaults();
  Document neutral = doc("a", "tekst bez markera i bez tog para slova");
  ClassifierConfig config;
  CHECK(classify(neutral, lexicon, config).label == VariantLabel::serbian);
  config.tie_break = ClassifierConfig::TieBreak::croatian;
  CHECK(classify(neutral, lexicon, config).label == VariantLabel::croatian);
  config.tie_break = ClassifierConfig::TieBreak::unknown;
  CHECK(classify(neutral, lexicon, config).label == VariantLabel::unknown);
}

TEST_CASE("classify: je vote weight shifts the balance") {
  auto lexicon = MarkerLexicon::defaults();
  // one sr marker vs heavy Ijekavian signal
  Document d = doc("a", "ko mlijeko bijelo dijete");
  ClassifierConfig config;
  config.je_vote_weight = 1;
  CHECK(classify(d, lexicon, config).label == VariantLabel::serbian);  // 1 vs 1 tie
  config.je_vote_weight = 2;
  CHECK(classify(d, lexicon, config).label == VariantLabel::croatian);  // 1 vs 2
}

TEST_CASE("classify is a pure function of text, lexicon and config") {
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  Document d = doc("x", "što se tiče uslova, uopšte nije jasno tko pita");
  VariantVerdict first = classify(d, lexicon, config);
  for (int i = 0; i < 5; ++i) {
    VariantVerdict again = classify(d, lexicon, config);
    CHECK(again.label == first.label);
    CHECK(again.sr_votes == first.sr_votes);
    CHECK(again.hr_votes == first.hr_votes);
    CHECK(again.je_ratio == first.je_ratio);
  }
}

TEST_CASE("split_corpus: degenerate and empty partitions") {
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  std::vector<Document> all_sr = {
      doc("1", "ko to zna"), doc("2", "uslov je prost"),
      doc("3", "uopšte se ne brinem")};
  auto [sr, hr] = run_split(all_sr, lexicon, config);
  CHECK(sr.size() == 3);
  CHECK(hr.empty());

  auto [sr_empty, hr_empty] = run_split({}, lexicon, config);
  CHECK(sr_empty.empty());
  CHECK(hr_empty.empty());
}

TEST_CASE("split_corpus: mixed ten-document fixture splits 6/4") {
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  std::vector<Document> docs;
  for (int i = 0; i < 6; ++i)
    docs.push_back(doc("sr" + std::to_string(i), "ko nosi uslov uopšte"));
  for (int i = 0; i < 4; ++i)
    docs.push_back(doc("hr" + std::to_string(i), "tko nosi uvjet uopće"));
  auto [sr, hr] = run_split(docs, lexicon, config);
  CHECK(sr.size() == 6);
  CHECK(hr.size() == 4);
  for (const Document& d : sr) CHECK(d.id.substr(0, 2) == "sr");
  for (const Document& d : hr) CHECK(d.id.substr(0, 2) == "hr");
}

TEST_CASE("split_corpus: partition preserves order, no loss, no duplication") {
  std::mt19937_64 rng(555);
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  std::vector<Document> docs;
  const char* samples[] = {"ko zna šta", "tko zna što", "mlijeko i dijete",
                           "tekst bez ikakvih signala", "uslov uslov uslov"};
  for (int i = 0; i < 200; ++i)
    docs.push_back(doc("d" + std::to_string(i),
                       samples[testsup::uniform_below(rng, 5)]));
  auto [sr, hr] = run_split(docs, lexicon, config);
  CHECK(sr.size() + hr.size() == docs.size());
  std::set<std::string> seen;
  for (const Document& d : sr) CHECK(seen.insert(d.id).second);
  for (const Document& d : hr) CHECK(seen.insert(d.id).second);
  // order within each half mirrors input order
  auto in_order = [&](const std::vector<Document>& half) {
    std::size_t last = 0;
    bool first = true;
    for (const Document& d : half) {
      std::size_t idx = std::stoul(d.id.substr(1));
      if (!first) CHECK(idx > last);
      last = idx;
      first = false;
    }
  };
  in_order(sr);
  in_order(hr);
}

TEST_CASE("adding sr marker occurrences never flips Serbian to Croatian") {
  std::mt19937_64 rng(771);
  auto lexicon = MarkerLexicon::defaults();
  ClassifierConfig config;
  const char* base_texts[] = {
      "ko zna uslov", "tekst bez markera", "je je je e e",
      "mlijeko bez markera je belo", "uopšte ko šta uslov"};
  const char* sr_forms[] = {"ko", "šta", "uslov", "uopšte"};
  int flips_checked = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::string text = base_texts[testsup::uniform_below(rng, 5)];
    VariantVerdict before = classify(doc("x", text), lexicon, config);
    int additions = 1 + static_cast<int>(testsup::uniform_below(rng, 5));
    for (int a = 0; a < additions; ++a) {
      text += " ";
      text += sr_forms[testsup::uniform_below(rng, 4)];
    }
    VariantVerdict after = classify(doc("x", text), lexicon, config);
    if (before.label == VariantLabel::serbian) {
      ++flips_checked;
      CHECK(after.label == VariantLabel::serbian);
    }
  }
  CHECK(flips_checked > 0);
}

TEST_CASE("marker lexicon TSV loading") {
  testsup::TempDir tmp("markers");
  testsup::write_text(tmp.file("markers.tsv"),
                      "hr_form\tsr_form\n"
                      "# comment line\n"
                      "tko\tko\n"
                      "tjedan\tnedelja\n");
  MarkerLexicon lex = MarkerLexicon::from_tsv(tmp.file("markers.tsv"));
  REQUIRE(lex.pairs.size() == 2);
  CHECK(lex.pairs[1].hr_form == "tjedan");
  CHECK(lex.pairs[1].sr_form == "nedelja");
}

TEST_CASE("marker lexicon validation") {
  MarkerLexicon same;
  same.pairs = {{"isto", "isto"}};
  CHECK_THROWS_AS(same.validate(), Error);
  MarkerLexicon uppercase;
  uppercase.pairs = {{"Tko", "ko"}};
  CHECK_THROWS_AS(uppercase.validate(), Error);
  MarkerLexicon multiword;
  multiword.pairs = {{"tko god", "ko"}};
  CHECK_THROWS_AS(multiword.validate(), Error);
}

TEST_SUITE_END();
