#include "corpkit/dissertation.hpp"

#include <algorithm>
#include <fstream>

#include <json.hpp>

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"
#include "corpkit/text.hpp"

namespace corpkit {

namespace {

using nlohmann::ordered_json;

bool is_space_cp(char32_t cp) {
  switch (cp) {
    case U' ': case U'\t': case U'\r': case U'\n': case U'\f': case U'\v':
    case 0x00A0: case 0x1680: case 0x2028: case 0x2029: case 0x202F:
    case 0x205F: case 0x3000:
      return true;
    default:
      return cp >= 0x2000 && cp <= 0x200A;
  }
}

std::string lower_ascii(std::string_view s) {
  std::string out(s);
  for (char& c : out)
    if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
  return out;
}

}  // namespace

bool derive_need_ocr(std::string_view first_pages_text,
                     std::size_t min_chars) {
  std::size_t visible = 0;
  std::size_t i = 0;
  while (i < first_pages_text.size()) {
    if (!is_space_cp(utf8_decode(first_pages_text, i))) {
      if (++visible >= min_chars) return false;
    }
  }
  return visible < min_chars;
}

bool derive_srpski(std::string_view dc_language,
                   std::string_view dc_language_iso) {
  std::string iso = lower_ascii(std::string(trim(dc_language_iso)));
  if (iso.rfind("sr", 0) == 0) return true;
  std::string language = to_lower(trim(dc_language));
  for (std::string_view needle : {"srpski", "serbian", "српски"}) {
    if (language.find(needle) != std::string::npos) return true;
  }
  return language == "sr";
}

bool derive_arr(std::string_view dc_rights_license) {
  std::string license = lower_ascii(std::string(trim(dc_rights_license)));
  return license == "arr" ||
         license.find("all rights reserved") != std::string::npos;
}

std::vector<DissertationRecord> filter_candidates(
    const std::vector<DissertationRecord>& records) {
  std::vector<DissertationRecord> kept;
  for (const DissertationRecord& rec : records) {
    std::string missing;
    auto require = [&](const std::optional<bool>& field, const char* name) {
      if (!field) missing += missing.empty() ? name : std::string(", ") + name;
    };
    require(rec.srpski, "srpski");
    require(rec.need_ocr, "need_ocr");
    require(rec.arr, "ARR");
    if (!missing.empty())
      throw Error("record '" + rec.id + "': missing enrichment field(s): " +
                  missing);
    bool has_url = rec.fulltext_url && !rec.fulltext_url->empty();
    if (has_url && *rec.srpski && !*rec.need_ocr && !*rec.arr)
      kept.push_back(rec);
  }
  return kept;
}

std::optional<std::size_t> locate_by_prefix(
    std::string_view fulltext, std::string_view partial_abstract) {
  // First six whitespace-separated words of the partial abstract, lowercased.
  std::vector<std::u32string> needle;
  {
    std::u32string word;
    std::size_t i = 0;
    while (i < partial_abstract.size() && needle.size() < 6) {
      char32_t cp = utf8_decode(partial_abstract, i);
      if (is_space_cp(cp)) {
        if (!word.empty()) {
          needle.push_back(word);
          word.clear();
        }
      } else {
        word.push_back(to_lower_codepoint(cp));
      }
    }
    if (!word.empty() && needle.size() < 6) needle.push_back(word);
  }
  if (needle.empty()) return std::nullopt;

  auto try_match = [&](std::size_t start) {
    std::size_t i = start;
    for (std::size_t w = 0; w < needle.size(); ++w) {
      if (w > 0) {
        // Words are separated by one or more whitespace codepoints.
        std::size_t spaces = 0;
        while (i < fulltext.size()) {
          std::size_t save = i;
          if (!is_space_cp(utf8_decode(fulltext, i))) {
            i = save;
            break;
          }
          ++spaces;
        }
        if (spaces == 0) return false;
      }
      for (char32_t expected : needle[w]) {
        if (i >= fulltext.size()) return false;
        if (to_lower_codepoint(utf8_decode(fulltext, i)) != expected)
          return false;
      }
    }
    return true;
  };

  const char32_t first = needle[0][0];
  std::size_t pos = 0;
  while (pos < fulltext.size()) {
    std::size_t next = pos;
    char32_t cp = to_lower_codepoint(utf8_decode(fulltext, next));
    if (cp == first && try_match(pos)) return pos;
    pos = next;
  }
  return std::nullopt;
}

// --- patterns ---------------------------------------------------------------

namespace {

SectionPatterns::Pattern compile_pattern(std::string source) {
  try {
    std::regex re(source, std::regex_constants::ECMAScript |
                              std::regex_constants::icase |
                              std::regex_constants::multiline |
                              std::regex_constants::optimize);
    return SectionPatterns::Pattern{std::move(source), std::move(re)};
  } catch (const std::regex_error& e) {
    throw Error("invalid section pattern '" + source + "': " + e.what());
  }
}

std::vector<SectionPatterns::Pattern> compile_all(
    const std::vector<std::string>& sources) {
  std::vector<SectionPatterns::Pattern> out;
  out.reserve(sources.size());
  for (const std::string& s : sources) out.push_back(compile_pattern(s));
  return out;
}

// Default heading inventory, Latin and Cyrillic, in the same JSON shape a
// --patterns directory uses. icase only folds ASCII, so phrases with
// diacritics or Cyrillic appear in explicit case variants. The copy shipped
// at patterns/sections.json is byte-identical; a test enforces that.
const char kDefaultSectionsJson[] = R"json({
  "inline": {
    "sr": {
      "abstract": [
        "^[ \\t]*(?:rezime|sažetak|SAŽETAK|apstrakt|izvod|резиме|Резиме|РЕЗИМЕ|сажетак|Сажетак|САЖЕТАК|апстракт|Апстракт|АПСТРАКТ|извод|Извод|ИЗВОД)[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ],
      "keywords": [
        "^[ \\t]*(?:ključne[ \\t]+reči|KLJUČNE[ \\t]+REČI|ključne[ \\t]+riječi|KLJUČNE[ \\t]+RIJEČI|кључне[ \\t]+речи|Кључне[ \\t]+речи|КЉУЧНЕ[ \\t]+РЕЧИ|кључне[ \\t]+ријечи|Кључне[ \\t]+ријечи|КЉУЧНЕ[ \\t]+РИЈЕЧИ)[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ],
      "scientific_field": [
        "^[ \\t]*(?:naučna[ \\t]+oblast|NAUČNA[ \\t]+OBLAST|научна[ \\t]+област|Научна[ \\t]+област|НАУЧНА[ \\t]+ОБЛАСТ)[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ]
    },
    "en": {
      "abstract": [
        "^[ \\t]*(?:abstract|summary)[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ],
      "keywords": [
        "^[ \\t]*key[ \\t]*words?[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ],
      "scientific_field": [
        "^[ \\t]*scientific[ \\t]+field[ \\t]*(?:[:.\\-][ \\t]*|$)"
      ]
    }
  },
  "table": {
    "anchor": [
      "key[ \\t]*words?[ \\t]+documentation",
      "(?:ključna[ \\t]+dokumentacijska[ \\t]+informacija|KLJUČNA[ \\t]+DOKUMENTACIJSKA[ \\t]+INFORMACIJA|кључна[ \\t]+документацијска[ \\t]+информација|Кључна[ \\t]+документацијска[ \\t]+информација|КЉУЧНА[ \\t]+ДОКУМЕНТАЦИЈСКА[ \\t]+ИНФОРМАЦИЈА)"
    ],
    "sr": {
      "abstract": [
        "^[ \\t]*(?:izvod|извод|Извод|ИЗВОД|iz|ИЗ)[ \\t]*(?:\\([^)\\n]*\\))?[ \\t]*[:\\-]"
      ],
      "keywords": [
        "^[ \\t]*(?:predmetna[ \\t]+odrednica[^:\\n]*|ključne[ \\t]+reči|KLJUČNE[ \\t]+REČI|po|предметна[ \\t]+одредница[^:\\n]*|Предметна[ \\t]+одредница[^:\\n]*|кључне[ \\t]+речи|Кључне[ \\t]+речи|КЉУЧНЕ[ \\t]+РЕЧИ|ПО)[ \\t]*[:\\-]"
      ],
      "scientific_field": [
        "^[ \\t]*(?:naučna[ \\t]+oblast|NAUČNA[ \\t]+OBLAST|научна[ \\t]+област|Научна[ \\t]+област|НАУЧНА[ \\t]+ОБЛАСТ|no|НО)[ \\t]*[:\\-]"
      ]
    },
    "en": {
      "abstract": [
        "^[ \\t]*(?:abstract|ab)[ \\t]*(?:\\([^)\\n]*\\))?[ \\t]*[:\\-]"
      ],
      "keywords": [
        "^[ \\t]*(?:subject[^:\\n]*|key[ \\t]*words?|s[ \\t]*k[ \\t]*w)[ \\t]*[:\\-]"
      ],
      "scientific_field": [
        "^[ \\t]*(?:scientific[ \\t]+field|sf)[ \\t]*[:\\-]"
      ]
    }
  }
}
)json";

struct Span {
  std::size_t begin;
  std::size_t end;
};

std::vector<Span> find_all(std::string_view text,
                           const std::vector<SectionPatterns::Pattern>& pats) {
  std::vector<Span> hits;
  for (const auto& p : pats) {
    auto it = std::cregex_iterator(text.data(), text.data() + text.size(),
                                   p.re);
    for (; it != std::cregex_iterator(); ++it)
      hits.push_back(Span{static_cast<std::size_t>(it->position(0)),
                          static_cast<std::size_t>(it->position(0)) +
                              static_cast<std::size_t>(it->length(0))});
  }
  std::sort(hits.begin(), hits.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  return hits;
}

std::size_t next_boundary(const std::vector<Span>& bounds, std::size_t from,
                          std::size_t fallback) {
  for (const Span& s : bounds) {
    if (s.begin >= from) return s.begin;
  }
  return fallback;
}

std::optional<Span> first_hit_at_or_after(const std::vector<Span>& hits,
                                          std::size_t from) {
  for (const Span& s : hits) {
    if (s.begin >= from) return s;
  }
  return std::nullopt;
}

// Position of the first blank line (newline followed by only spaces/tabs and
// another newline) at or after pos.
std::size_t blank_line_after(std::string_view text, std::size_t pos,
                             std::size_t fallback) {
  std::size_t i = pos;
  while (i < text.size()) {
    if (text[i] == '\n') {
      std::size_t j = i + 1;
      while (j < text.size() &&
             (text[j] == ' ' || text[j] == '\t' || text[j] == '\r'))
        ++j;
      if (j < text.size() && text[j] == '\n') return i;
    }
    ++i;
  }
  return fallback;
}

std::vector<std::string> split_keywords(std::string_view s) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == ',' || s[i] == ';') {
      std::string_view item = trim(s.substr(start, i - start));
      if (!item.empty()) out.emplace_back(item);
      start = i + 1;
    }
  }
  return out;
}

struct SectionScan {
  std::string_view text;
  std::vector<Span> bounds;  // all recognized headings, sorted

  std::optional<std::string> span_from(std::size_t content_start,
                                       bool blank_caps) const {
    std::size_t end = next_boundary(bounds, content_start, text.size());
    if (blank_caps)
      end = std::min(end, blank_line_after(text, content_start, text.size()));
    std::string_view body = trim(text.substr(content_start,
                                             end - content_start));
    if (body.empty()) return std::nullopt;
    return std::string(body);
  }
};

ExtractionResult extract_with(
    std::string_view fulltext, const SectionPatterns::LangSet& lang_set,
    const std::vector<Span>& bounds,
    std::optional<std::string_view> partial_abstract, bool sections_ordered) {
  ExtractionResult result;
  SectionScan scan{fulltext, bounds};

  // Abstract start: metadata prefix first, heading pattern as fallback.
  std::optional<std::size_t> content_start;
  if (partial_abstract && !partial_abstract->empty()) {
    if (auto off = locate_by_prefix(fulltext, *partial_abstract))
      content_start = *off;
  }
  if (!content_start) {
    auto hits = find_all(fulltext, lang_set.abstract);
    if (!hits.empty()) content_start = hits[0].end;
  }
  if (!content_start) {
    result.failure_reason = "abstract not located";
    return result;
  }

  // The hit that starts exactly at content_start is our own heading's tail,
  // so the boundary search begins one byte past it.
  result.bundle.abstract = scan.span_from(*content_start, false);
  if (!result.bundle.abstract) {
    result.failure_reason = "abstract empty";
    return result;
  }
  result.ok = true;

  std::size_t abstract_end =
      next_boundary(bounds, *content_start, fulltext.size());

  auto kw_hit = first_hit_at_or_after(find_all(fulltext, lang_set.keywords),
                                      sections_ordered ? abstract_end : 0);
  if (kw_hit) {
    if (auto body = scan.span_from(kw_hit->end, true))
      result.bundle.keywords = split_keywords(*body);
  }

  std::size_t field_from = sections_ordered
                               ? (kw_hit ? kw_hit->end : abstract_end)
                               : 0;
  auto field_hit = first_hit_at_or_after(
      find_all(fulltext, lang_set.scientific_field), field_from);
  if (field_hit)
    result.bundle.scientific_field = scan.span_from(field_hit->end, true);

  return result;
}

std::vector<Span> merge_bounds(
    std::string_view text,
    std::initializer_list<const std::vector<SectionPatterns::Pattern>*> sets) {
  std::vector<Span> all;
  for (const auto* set : sets) {
    auto hits = find_all(text, *set);
    all.insert(all.end(), hits.begin(), hits.end());
  }
  std::sort(all.begin(), all.end(),
            [](const Span& a, const Span& b) { return a.begin < b.begin; });
  return all;
}

}  // namespace

namespace {

SectionPatterns parse_sections(const std::string& content,
                               const std::string& context) {
  ordered_json doc = ordered_json::parse(content, nullptr, false);
  if (doc.is_discarded() || !doc.is_object())
    throw Error(context + ": invalid JSON");

  auto string_list = [&](const ordered_json& node,
                         const char* what) -> std::vector<std::string> {
    if (!node.is_array())
      throw Error(context + ": " + what + " must be an array");
    std::vector<std::string> out;
    for (const auto& item : node) {
      if (!item.is_string())
        throw Error(context + ": " + what + " entries must be strings");
      out.push_back(item.get<std::string>());
    }
    if (out.empty()) throw Error(context + ": " + what + " must not be empty");
    return out;
  };
  auto lang_set = [&](const ordered_json& node,
                      const char* what) -> SectionPatterns::LangSet {
    if (!node.is_object())
      throw Error(context + ": " + what + " must be an object");
    SectionPatterns::LangSet set;
    set.abstract = compile_all(string_list(node.at("abstract"), what));
    set.keywords = compile_all(string_list(node.at("keywords"), what));
    set.scientific_field =
        compile_all(string_list(node.at("scientific_field"), what));
    return set;
  };

  try {
    SectionPatterns p;
    p.inline_sr = lang_set(doc.at("inline").at("sr"), "inline.sr");
    p.inline_en = lang_set(doc.at("inline").at("en"), "inline.en");
    p.table_sr = lang_set(doc.at("table").at("sr"), "table.sr");
    p.table_en = lang_set(doc.at("table").at("en"), "table.en");
    p.table_anchor =
        compile_all(string_list(doc.at("table").at("anchor"), "table.anchor"));
    return p;
  } catch (const ordered_json::exception& e) {
    throw Error(context + ": " + e.what());
  }
}

}  // namespace

std::string_view default_sections_json() { return kDefaultSectionsJson; }

SectionPatterns SectionPatterns::defaults() {
  return parse_sections(kDefaultSectionsJson, "<builtin patterns>");
}

SectionPatterns SectionPatterns::load(const std::filesystem::path& dir) {
  std::filesystem::path file = dir / "sections.json";
  return parse_sections(read_file(file), file.string());
}

std::string_view to_string(Layout layout) {
  return layout == Layout::inline_text ? "inline" : "kwd_table";
}

Layout detect_layout(std::string_view fulltext,
                     const SectionPatterns& patterns,
                     const std::optional<std::string>& override_name) {
  if (override_name) {
    if (*override_name == "inline") return Layout::inline_text;
    if (*override_name == "kwd_table") return Layout::kwd_table;
    throw Error("unknown layout override '" + *override_name + "'");
  }
  for (const auto& p : patterns.table_anchor) {
    if (std::regex_search(fulltext.begin(), fulltext.end(), p.re))
      return Layout::kwd_table;
  }
  return Layout::inline_text;
}

ExtractionResult extract_inline(
    std::string_view fulltext, const SectionPatterns& patterns, LangSide lang,
    std::optional<std::string_view> partial_abstract) {
  std::vector<Span> bounds = merge_bounds(
      fulltext,
      {&patterns.inline_sr.abstract, &patterns.inline_sr.keywords,
       &patterns.inline_sr.scientific_field, &patterns.inline_en.abstract,
       &patterns.inline_en.keywords, &patterns.inline_en.scientific_field});
  const SectionPatterns::LangSet& set =
      lang == LangSide::sr ? patterns.inline_sr : patterns.inline_en;
  return extract_with(fulltext, set, bounds, partial_abstract,
                      /*sections_ordered=*/true);
}

std::pair<ExtractionResult, ExtractionResult> extract_kwd_table(
    std::string_view fulltext, const SectionPatterns& patterns) {
  std::vector<Span> bounds = merge_bounds(
      fulltext,
      {&patterns.table_sr.abstract, &patterns.table_sr.keywords,
       &patterns.table_sr.scientific_field, &patterns.table_en.abstract,
       &patterns.table_en.keywords, &patterns.table_en.scientific_field,
       &patterns.table_anchor});
  ExtractionResult sr = extract_with(fulltext, patterns.table_sr, bounds, {},
                                     /*sections_ordered=*/false);
  ExtractionResult en = extract_with(fulltext, patterns.table_en, bounds, {},
                                     /*sections_ordered=*/false);
  return {std::move(sr), std::move(en)};
}

std::string_view to_string(RecordState state) {
  switch (state) {
    case RecordState::paired: return "paired";
    case RecordState::partial: return "partial";
    case RecordState::failed: return "failed";
  }
  return "failed";
}

PairBuildResult build_pairs(
    const std::vector<CandidateExtraction>& candidates) {
  PairBuildResult result;
  result.updated.reserve(candidates.size());
  result.states.reserve(candidates.size());
  for (const CandidateExtraction& cand : candidates) {
    DissertationRecord rec = cand.record;
    const SectionBundle& sr = cand.sr.bundle;
    const SectionBundle& en = cand.en.bundle;

    if (sr.abstract) rec.abstract_sr = sr.abstract;
    if (en.abstract) rec.abstract_en = en.abstract;
    if (sr.scientific_field) rec.scientific_field_sr = sr.scientific_field;
    if (en.scientific_field) rec.scientific_field_en = en.scientific_field;
    if (sr.keywords) {
      rec.keywords_from_text = sr.keywords;
    } else if (en.keywords) {
      rec.keywords_from_text = en.keywords;
    }
    rec.layout_override = std::string(to_string(cand.layout));

    bool has_sr = sr.abstract.has_value();
    bool has_en = en.abstract.has_value();
    RecordState state;
    if (has_sr && has_en) {
      state = RecordState::paired;
      ParallelAbstractPair pair;
      pair.id = rec.id;
      pair.sr_abstract = *sr.abstract;
      pair.en_abstract = *en.abstract;
      pair.sr_keywords = sr.keywords;
      pair.en_keywords = en.keywords;
      pair.scientific_field =
          sr.scientific_field ? sr.scientific_field : en.scientific_field;
      pair.layout = cand.layout;
      result.pairs.push_back(std::move(pair));
    } else if (has_sr || has_en) {
      state = RecordState::partial;
    } else {
      state = RecordState::failed;
      std::string reason = "sr: " +
                           (cand.sr.failure_reason.empty()
                                ? std::string("abstract not located")
                                : cand.sr.failure_reason) +
                           "; en: " +
                           (cand.en.failure_reason.empty()
                                ? std::string("abstract not located")
                                : cand.en.failure_reason);
      result.failures.emplace_back(rec.id, std::move(reason));
    }
    result.states.push_back(state);
    result.updated.push_back(std::move(rec));
  }
  return result;
}

// --- jsonl ------------------------------------------------------------------

namespace {

std::optional<bool> parse_boolish(const ordered_json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (v.is_string()) {
    std::string s = lower_ascii(v.get<std::string>());
    if (s == "yes" || s == "true" || s == "da") return true;
    if (s == "no" || s == "false" || s == "ne") return false;
  }
  return std::nullopt;
}

std::optional<std::vector<std::string>> parse_string_list(
    const ordered_json& v) {
  if (!v.is_array()) return std::nullopt;
  std::vector<std::string> out;
  for (const auto& item : v) {
    if (!item.is_string()) return std::nullopt;
    out.push_back(item.get<std::string>());
  }
  return out;
}

bool parse_record_json(const std::string& line, DissertationRecord& rec,
                       std::string& why) {
  ordered_json doc = ordered_json::parse(line, nullptr, false);
  if (doc.is_discarded() || !doc.is_object()) {
    why = "invalid JSON";
    return false;
  }
  if (!doc.contains("id") || !doc["id"].is_string() ||
      doc["id"].get<std::string>().empty()) {
    why = "missing field id";
    return false;
  }
  rec.id = doc["id"].get<std::string>();
  rec.raw = line;

  auto str = [&](const char* key) -> std::optional<std::string> {
    if (doc.contains(key) && doc[key].is_string())
      return doc[key].get<std::string>();
    return std::nullopt;
  };
  rec.dc_language = str("dc_language").value_or("");
  rec.dc_language_iso = str("dc_language_iso").value_or("");
  rec.dc_rights_license = str("dc_rights_license").value_or("");
  rec.partial_abstract_sr = str("partial_abstract_sr");
  rec.partial_abstract_en = str("partial_abstract_en");
  rec.fulltext_url = str("fulltext_url");
  rec.abstract_sr = str("abstract_sr");
  rec.abstract_en = str("abstract_en");
  rec.scientific_field_sr = str("scientific_field_sr");
  rec.scientific_field_en = str("scientific_field_en");
  rec.layout_override = str("layout");
  if (doc.contains("keywords_meta"))
    rec.keywords_meta = parse_string_list(doc["keywords_meta"]);
  if (doc.contains("keywords_from_text"))
    rec.keywords_from_text = parse_string_list(doc["keywords_from_text"]);
  if (doc.contains("need_ocr")) rec.need_ocr = parse_boolish(doc["need_ocr"]);
  if (doc.contains("srpski")) rec.srpski = parse_boolish(doc["srpski"]);
  if (doc.contains("ARR")) rec.arr = parse_boolish(doc["ARR"]);
  return true;
}

}  // namespace

std::vector<DissertationRecord> load_metadata_jsonl(
    const std::filesystem::path& path, bool skip_malformed) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open metadata file: " + path.string());
  std::vector<DissertationRecord> records;
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    DissertationRecord rec;
    std::string why;
    if (parse_record_json(line, rec, why)) {
      records.push_back(std::move(rec));
      continue;
    }
    if (!skip_malformed)
      throw Error(path.string() + ": line " + std::to_string(line_no) + ": " +
                  why);
    log_warn(path.string() + ": line " + std::to_string(line_no) + ": " + why +
             " (skipped)");
  }
  if (in.bad()) throw Error("read error on metadata file: " + path.string());
  return records;
}

void write_metadata_jsonl(const std::vector<DissertationRecord>& records,
                          std::ostream& out) {
  for (const DissertationRecord& rec : records) {
    ordered_json doc;
    if (!rec.raw.empty()) {
      doc = ordered_json::parse(rec.raw, nullptr, false);
      if (doc.is_discarded() || !doc.is_object()) doc = ordered_json::object();
    } else {
      doc = ordered_json::object();
    }
    doc["id"] = rec.id;
    if (rec.need_ocr) doc["need_ocr"] = *rec.need_ocr;
    if (rec.srpski) doc["srpski"] = *rec.srpski;
    if (rec.arr) doc["ARR"] = *rec.arr;
    if (rec.fulltext_url) doc["fulltext_url"] = *rec.fulltext_url;
    if (rec.abstract_sr) doc["abstract_sr"] = *rec.abstract_sr;
    if (rec.abstract_en) doc["abstract_en"] = *rec.abstract_en;
    if (rec.scientific_field_sr)
      doc["scientific_field_sr"] = *rec.scientific_field_sr;
    if (rec.scientific_field_en)
      doc["scientific_field_en"] = *rec.scientific_field_en;
    if (rec.keywords_from_text)
      doc["keywords_from_text"] = *rec.keywords_from_text;
    if (rec.layout_override) doc["layout"] = *rec.layout_override;
    out << doc.dump() << '\n';
  }
}

void write_pairs_jsonl(const std::vector<ParallelAbstractPair>& pairs,
                       std::ostream& out) {
  for (const ParallelAbstractPair& pair : pairs) {
    ordered_json doc;
    doc["id"] = pair.id;
    doc["layout"] = std::string(to_string(pair.layout));
    doc["sr_abstract"] = pair.sr_abstract;
    doc["en_abstract"] = pair.en_abstract;
    if (pair.sr_keywords) doc["sr_keywords"] = *pair.sr_keywords;
    if (pair.en_keywords) doc["en_keywords"] = *pair.en_keywords;
    if (pair.scientific_field)
      doc["scientific_field"] = *pair.scientific_field;
    out << doc.dump() << '\n';
  }
}

}  // namespace corpkit
