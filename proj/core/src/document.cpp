#include "corpkit/document.hpp"

namespace corpkit {

std::string_view to_string(Lang lang) {
  switch (lang) {
    case Lang::sr: return "sr";
    case Lang::hr: return "hr";
    case Lang::bs: return "bs";
    case Lang::cnr: return "cnr";
    case Lang::sh: return "sh";
    case Lang::mixed: return "mixed";
    case Lang::unknown: return "unknown";
  }
  return "unknown";
}

std::optional<Lang> parse_lang(std::string_view name) {
  if (name == "sr") return Lang::sr;
  if (name == "hr") return Lang::hr;
  if (name == "bs") return Lang::bs;
  if (name == "cnr") return Lang::cnr;
  if (name == "sh") return Lang::sh;
  if (name == "mixed") return Lang::mixed;
  if (name == "unknown") return Lang::unknown;
  return std::nullopt;
}

std::string_view to_string(CorpusOrigin origin) {
  switch (origin) {
    case CorpusOrigin::web: return "web";
    case CorpusOrigin::textbook: return "textbook";
    case CorpusOrigin::literary: return "literary";
    case CorpusOrigin::synthetic: return "synthetic";
    case CorpusOrigin::mixed: return "mixed";
  }
  return "web";
}

std::string_view to_string(CorpusForm form) {
  switch (form) {
    case CorpusForm::plain: return "plain";
    case CorpusForm::annotated: return "annotated";
    case CorpusForm::parallel: return "parallel";
  }
  return "plain";
}

std::optional<CorpusOrigin> parse_origin(std::string_view name) {
  if (name == "web") return CorpusOrigin::web;
  if (name == "textbook") return CorpusOrigin::textbook;
  if (name == "literary") return CorpusOrigin::literary;
  if (name == "synthetic") return CorpusOrigin::synthetic;
  if (name == "mixed") return CorpusOrigin::mixed;
  return std::nullopt;
}

std::optional<CorpusForm> parse_form(std::string_view name) {
  if (name == "plain") return CorpusForm::plain;
  if (name == "annotated") return CorpusForm::annotated;
  if (name == "parallel") return CorpusForm::parallel;
  return std::nullopt;
}

}  // namespace corpkit
