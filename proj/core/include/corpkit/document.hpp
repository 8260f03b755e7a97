#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace corpkit {

enum class Lang { sr, hr, bs, cnr, sh, mixed, unknown };

std::string_view to_string(Lang lang);
std::optional<Lang> parse_lang(std::string_view name);

// One text unit. Ids are unique within a loaded corpus; loaders enforce this.
struct Document {
  std::string id;
  std::string text;
  std::string source;  // corpus the document came from
  Lang lang = Lang::unknown;
};

// Corpus catalog classification: origin of the material and form of the
// resource.
enum class CorpusOrigin { web = 1, textbook, literary, synthetic, mixed };
enum class CorpusForm { plain = 1, annotated, parallel };

std::string_view to_string(CorpusOrigin origin);
std::string_view to_string(CorpusForm form);
std::optional<CorpusOrigin> parse_origin(std::string_view name);
std::optional<CorpusForm> parse_form(std::string_view name);

struct CorpusMeta {
  std::string name;
  Lang lang = Lang::unknown;
  CorpusOrigin origin = CorpusOrigin::web;
  CorpusForm form = CorpusForm::plain;
  std::uint64_t word_count = 0;
};

}  // namespace corpkit
