#include "corpkit/variant.hpp"

#include <fstream>
#include <unordered_map>

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"

namespace corpkit {

MarkerLexicon MarkerLexicon::defaults() {
  MarkerLexicon lex;
  lex.pairs = {
      {"tko", "ko"},
      {"što", "šta"},
      {"uvjet", "uslov"},
      {"uopće", "uopšte"},
  };
  return lex;
}

MarkerLexicon MarkerLexicon::from_tsv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open marker lexicon: " + path.string());
  MarkerLexicon lex;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view sv = trim(line);
    if (sv.empty() || sv.front() == '#') continue;
    auto tab = sv.find('\t');
    if (tab == std::string_view::npos)
      throw Error(path.string() + ": line " + std::to_string(line_no) +
                  ": expected two tab-separated columns");
    std::string_view hr = trim(sv.substr(0, tab));
    std::string_view sr = trim(sv.substr(tab + 1));
    if (hr == "hr_form" && sr == "sr_form") continue;  // header
    lex.pairs.push_back({std::string(hr), std::string(sr)});
  }
  lex.validate();
  return lex;
}

void MarkerLexicon::validate() const {
  for (const MarkerPair& p : pairs) {
    if (p.hr_form.empty() || p.sr_form.empty())
      throw Error("marker lexicon: empty form");
    if (p.hr_form == p.sr_form)
      throw Error("marker lexicon: forms within a pair must differ ('" +
                  p.hr_form + "')");
    for (const std::string& form : {p.hr_form, p.sr_form}) {
      TokenStream toks = tokenize(form);
      if (toks.size() != 1 || toks[0] != form)
        throw Error("marker lexicon: '" + form +
                    "' is not a single lowercase token");
    }
  }
}

void ClassifierConfig::validate() const {
  if (je_ratio_threshold < 0.0 || je_ratio_threshold > 1.0)
    throw Error("classifier: je_ratio_threshold must be in [0,1]");
}

std::string_view to_string(ClassifierConfig::TieBreak tie_break) {
  switch (tie_break) {
    case ClassifierConfig::TieBreak::serbian: return "serbian";
    case ClassifierConfig::TieBreak::croatian: return "croatian";
    case ClassifierConfig::TieBreak::unknown: return "unknown";
  }
  return "serbian";
}

std::optional<ClassifierConfig::TieBreak> parse_tie_break(
    std::string_view name) {
  if (name == "serbian") return ClassifierConfig::TieBreak::serbian;
  if (name == "croatian") return ClassifierConfig::TieBreak::croatian;
  if (name == "unknown") return ClassifierConfig::TieBreak::unknown;
  return std::nullopt;
}

std::string_view to_string(VariantLabel label) {
  switch (label) {
    case VariantLabel::serbian: return "serbian";
    case VariantLabel::croatian: return "croatian";
    case VariantLabel::unknown: return "unknown";
  }
  return "unknown";
}

std::pair<std::int64_t, std::int64_t> marker_votes(
    const TokenStream& tokens, const MarkerLexicon& lexicon) {
  // A form may appear in several pairs and in both roles; every role counts.
  std::unordered_map<std::string_view, std::pair<int, int>> weight;
  for (const MarkerPair& p : lexicon.pairs) {
    weight[p.sr_form].first += 1;
    weight[p.hr_form].second += 1;
  }
  std::int64_t sr = 0, hr = 0;
  for (const std::string& tok : tokens) {
    auto it = weight.find(tok);
    if (it == weight.end()) continue;
    sr += it->second.first;
    hr += it->second.second;
  }
  return {sr, hr};
}

double je_ratio(std::string_view text) {
  std::uint64_t e_count = 0, je_count = 0;
  char32_t prev = 0;
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = to_lower_codepoint(utf8_decode(text, i));
    if (cp == U'e') {
      ++e_count;
      if (prev == U'j') ++je_count;
    }
    prev = cp;
  }
  return e_count == 0 ? 0.0
                      : static_cast<double>(je_count) /
                            static_cast<double>(e_count);
}

VariantVerdict classify(const Document& doc, const MarkerLexicon& lexicon,
                        const ClassifierConfig& config) {
  config.validate();
  VariantVerdict verdict;
  auto votes = marker_votes(tokenize(doc.text), lexicon);
  verdict.sr_votes = votes.first;
  verdict.hr_votes = votes.second;
  verdict.je_ratio = je_ratio(doc.text);

  std::int64_t hr_total = verdict.hr_votes;
  if (verdict.je_ratio > config.je_ratio_threshold)
    hr_total += config.je_vote_weight;

  if (hr_total > verdict.sr_votes) {
    verdict.label = VariantLabel::croatian;
  } else if (verdict.sr_votes > hr_total) {
    verdict.label = VariantLabel::serbian;
  } else {
    switch (config.tie_break) {
      case ClassifierConfig::TieBreak::serbian:
        verdict.label = VariantLabel::serbian;
        break;
      case ClassifierConfig::TieBreak::croatian:
        verdict.label = VariantLabel::croatian;
        break;
      case ClassifierConfig::TieBreak::unknown:
        verdict.label = VariantLabel::unknown;
        break;
    }
  }
  return verdict;
}

SplitCounts split_corpus(
    DocumentSource& docs, const MarkerLexicon& lexicon,
    const ClassifierConfig& config,
    const std::function<void(const Document&, const VariantVerdict&)>& sink_sr,
    const std::function<void(const Document&, const VariantVerdict&)>&
        sink_hr) {
  SplitCounts counts;
  while (auto doc = docs.next()) {
    VariantVerdict verdict = classify(*doc, lexicon, config);
    if (verdict.label == VariantLabel::serbian) {
      ++counts.sr_docs;
      sink_sr(*doc, verdict);
    } else {
      ++counts.hr_docs;
      sink_hr(*doc, verdict);
    }
  }
  return counts;
}

}  // namespace corpkit
