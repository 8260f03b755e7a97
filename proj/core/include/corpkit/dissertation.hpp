#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <regex>
#include <string>
#include <vector>

namespace corpkit {

// Dissertation metadata with enrichment and extraction fields. The original
// JSON record is kept verbatim in raw so unknown fields survive a
// load-update-write round trip.
struct DissertationRecord {
  std::string id;
  std::string dc_language;
  std::string dc_language_iso;
  std::string dc_rights_license;
  std::optional<std::string> partial_abstract_sr;
  std::optional<std::string> partial_abstract_en;
  std::optional<std::vector<std::string>> keywords_meta;
  std::optional<std::string> fulltext_url;
  std::optional<bool> need_ocr;
  std::optional<bool> srpski;
  std::optional<bool> arr;
  std::optional<std::vector<std::string>> keywords_from_text;
  std::optional<std::string> abstract_sr;
  std::optional<std::string> abstract_en;
  std::optional<std::string> scientific_field_sr;
  std::optional<std::string> scientific_field_en;
  std::optional<std::string> layout_override;  // "inline" | "kwd_table"
  std::string raw;
};

// True when fewer than min_chars non-whitespace codepoints were extracted
// from the first pages, i.e. the PDF is likely scanned and needs OCR.
bool derive_need_ocr(std::string_view first_pages_text,
                     std::size_t min_chars = 500);

// Serbian when either metadata language field names Serbian: the ISO code
// starts with "sr"/"srp", or the free-form language mentions
// srpski/serbian/српски.
bool derive_srpski(std::string_view dc_language,
                   std::string_view dc_language_iso);

// All-rights-reserved license flag: the license string is "arr" or contains
// "all rights reserved" (case-insensitive).
bool derive_arr(std::string_view dc_rights_license);

// Keeps records with a fulltext_url that are Serbian, need no OCR and are
// not ARR; order preserved. A missing enrichment field is an error naming
// the field and record.
std::vector<DissertationRecord> filter_candidates(
    const std::vector<DissertationRecord>& records);

// Whitespace-normalized, case-insensitive search for the first six
// whitespace-separated words of partial_abstract. Returns the byte offset
// of the first match in the original text.
std::optional<std::size_t> locate_by_prefix(std::string_view fulltext,
                                            std::string_view partial_abstract);

enum class LangSide { sr, en };

// Regular-expression inventory for section extraction. The sets below are a
// best-effort default for Serbian dissertations (Latin and Cyrillic); real
// deployments load their own from a patterns directory.
struct SectionPatterns {
  struct Pattern {
    std::string source;
    std::regex re;
  };
  struct LangSet {
    std::vector<Pattern> abstract;
    std::vector<Pattern> keywords;
    std::vector<Pattern> scientific_field;
  };
  LangSet inline_sr;
  LangSet inline_en;
  LangSet table_sr;
  LangSet table_en;
  std::vector<Pattern> table_anchor;  // any match ⇒ key-word-documentation

  static SectionPatterns defaults();
  // Loads <dir>/sections.json.
  static SectionPatterns load(const std::filesystem::path& dir);
};

// The built-in pattern inventory in sections.json form; the file shipped at
// patterns/sections.json is this exact content.
std::string_view default_sections_json();

struct SectionBundle {
  std::optional<std::string> abstract;
  std::optional<std::vector<std::string>> keywords;
  std::optional<std::string> scientific_field;
};

struct ExtractionResult {
  bool ok = false;  // abstract located and non-empty
  SectionBundle bundle;
  std::string failure_reason;
};

enum class Layout { inline_text, kwd_table };

std::string_view to_string(Layout layout);

// kwd_table when any table anchor matches; a record-level override wins.
Layout detect_layout(std::string_view fulltext, const SectionPatterns& patterns,
                     const std::optional<std::string>& override_name = {});

// Inline layout: abstract start via the metadata prefix, falling back to
// heading patterns; each section ends at the next recognized heading.
// Keywords and scientific field are additionally capped at the first blank
// line, since they are short spans.
ExtractionResult extract_inline(
    std::string_view fulltext, const SectionPatterns& patterns, LangSide lang,
    std::optional<std::string_view> partial_abstract = {});

// Key Word Documentation layout: both language bundles via table row label
// patterns.
std::pair<ExtractionResult, ExtractionResult> extract_kwd_table(
    std::string_view fulltext, const SectionPatterns& patterns);

struct ParallelAbstractPair {
  std::string id;
  std::string sr_abstract;
  std::string en_abstract;
  std::optional<std::vector<std::string>> sr_keywords;
  std::optional<std::vector<std::string>> en_keywords;
  std::optional<std::string> scientific_field;
  Layout layout = Layout::inline_text;
};

enum class RecordState { paired, partial, failed };

std::string_view to_string(RecordState state);

struct CandidateExtraction {
  DissertationRecord record;
  Layout layout = Layout::inline_text;
  ExtractionResult sr;
  ExtractionResult en;
};

struct PairBuildResult {
  std::vector<ParallelAbstractPair> pairs;
  std::vector<DissertationRecord> updated;  // input order
  std::vector<RecordState> states;          // parallel to updated
  std::vector<std::pair<std::string, std::string>> failures;  // id, reason
};

// A pair is emitted only when both abstracts are non-empty; records are
// updated with whatever was extracted, including keywords_from_text even
// when it differs from the metadata keywords.
PairBuildResult build_pairs(const std::vector<CandidateExtraction>& candidates);

// --- metadata / pairs jsonl ------------------------------------------------

std::vector<DissertationRecord> load_metadata_jsonl(
    const std::filesystem::path& path, bool skip_malformed = false);

void write_metadata_jsonl(const std::vector<DissertationRecord>& records,
                          std::ostream& out);

void write_pairs_jsonl(const std::vector<ParallelAbstractPair>& pairs,
                       std::ostream& out);

}  // namespace corpkit
