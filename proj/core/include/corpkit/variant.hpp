#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "corpkit/corpus_io.hpp"
#include "corpkit/document.hpp"
#include "corpkit/text.hpp"

namespace corpkit {

// Lexical doublets whose variant choice signals Croatian vs Serbian usage.
struct MarkerPair {
  std::string hr_form;
  std::string sr_form;
};

struct MarkerLexicon {
  std::vector<MarkerPair> pairs;

  // tko/ko, što/šta, uvjet/uslov, uopće/uopšte
  static MarkerLexicon defaults();
  // Two tab-separated columns hr_form, sr_form; '#' comments and an optional
  // "hr_form\tsr_form" header line are ignored.
  static MarkerLexicon from_tsv(const std::filesystem::path& path);

  void validate() const;
};

struct ClassifierConfig {
  // The je/e ratio above which a document gets one Ijekavian (Croatian-side)
  // vote. This default is a heuristic, not a calibrated constant: Ekavian
  // text still contains the copula "je", so tune it per deployment.
  double je_ratio_threshold = 0.16;
  int je_vote_weight = 1;
  enum class TieBreak { serbian, croatian, unknown };
  TieBreak tie_break = TieBreak::serbian;

  void validate() const;
};

std::string_view to_string(ClassifierConfig::TieBreak tie_break);
std::optional<ClassifierConfig::TieBreak> parse_tie_break(
    std::string_view name);

enum class VariantLabel { serbian, croatian, unknown };

std::string_view to_string(VariantLabel label);

struct VariantVerdict {
  VariantLabel label = VariantLabel::unknown;
  std::int64_t sr_votes = 0;
  std::int64_t hr_votes = 0;  // marker votes only, before the Ijekavian vote
  double je_ratio = 0.0;
};

// (sr_votes, hr_votes): total occurrences of the respective marker forms,
// token-exact.
std::pair<std::int64_t, std::int64_t> marker_votes(
    const TokenStream& tokens, const MarkerLexicon& lexicon);

// Occurrences of "je" divided by occurrences of "e" in the lowercased text;
// 0 when the text has no "e". Counts are over ASCII j/e, so Cyrillic text
// scores 0 and is decided by markers and the tie break.
double je_ratio(std::string_view text);

// Decision rule: hr_total = hr_votes + je_vote_weight when je_ratio exceeds
// the threshold; Croatian if hr_total > sr_votes, Serbian if sr_votes >
// hr_total, tie_break otherwise.
VariantVerdict classify(const Document& doc, const MarkerLexicon& lexicon,
                        const ClassifierConfig& config);

// Exact binary partition in input order: label serbian goes to sink_sr,
// anything else (croatian, or unknown under TieBreak::unknown) to sink_hr —
// the second output is the "non-Serbian" half.
struct SplitCounts {
  std::uint64_t sr_docs = 0;
  std::uint64_t hr_docs = 0;
};
SplitCounts split_corpus(
    DocumentSource& docs, const MarkerLexicon& lexicon,
    const ClassifierConfig& config,
    const std::function<void(const Document&, const VariantVerdict&)>& sink_sr,
    const std::function<void(const Document&, const VariantVerdict&)>& sink_hr);

}  // namespace corpkit
