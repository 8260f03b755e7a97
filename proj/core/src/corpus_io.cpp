#include "corpkit/corpus_io.hpp"

#include <algorithm>
#include <fstream>
#include <unordered_set>

#include <json.hpp>

#include "corpkit/error.hpp"
#include "corpkit/hash.hpp"
#include "corpkit/io_util.hpp"
#include "corpkit/text.hpp"

namespace corpkit {

namespace {

using nlohmann::ordered_json;

constexpr std::uint64_t kIdSeed = 0x1d5ull;

std::string stem_of(const std::filesystem::path& path) {
  return path.stem().string();
}

// Tracks ids by 64-bit hash; a collision of distinct ids is treated as a
// duplicate, which is the same approximation the dedup index makes.
class IdTracker {
 public:
  bool seen_before(std::string_view id) {
    return !set_.insert(murmur64(id, kIdSeed)).second;
  }

 private:
  std::unordered_set<std::uint64_t> set_;
};

class JsonlSource : public DocumentSource {
 public:
  JsonlSource(const std::filesystem::path& path, LoaderOptions options)
      : path_(path), options_(std::move(options)), in_(path) {
    if (!in_) throw Error("cannot open corpus file: " + path.string());
    if (options_.default_source.empty())
      options_.default_source = stem_of(path_);
  }

  std::optional<Document> next() override {
    std::string line;
    while (std::getline(in_, line)) {
      ++line_no_;
      if (line.empty()) continue;
      Document doc;
      std::string why;
      if (parse_record(line, doc, why)) return doc;
      if (!options_.skip_malformed)
        throw Error(path_.string() + ": line " + std::to_string(line_no_) +
                    ": " + why);
      ++skipped_;
      log_warn(path_.string() + ": line " + std::to_string(line_no_) + ": " +
               why + " (skipped)");
    }
    if (in_.bad())
      throw Error("read error on corpus file: " + path_.string());
    return std::nullopt;
  }

  std::uint64_t skipped() const override { return skipped_; }

 private:
  bool parse_record(const std::string& line, Document& doc, std::string& why) {
    ordered_json rec = ordered_json::parse(line, nullptr, false);
    if (rec.is_discarded()) {
      why = "invalid JSON";
      return false;
    }
    if (!rec.is_object()) {
      why = "record is not a JSON object";
      return false;
    }
    if (!rec.contains("text")) {
      why = "missing field text";
      return false;
    }
    if (!rec["text"].is_string()) {
      why = "field text is not a string";
      return false;
    }
    doc.text = rec["text"].get<std::string>();
    if (doc.text.empty() && !options_.allow_empty_text) {
      why = "empty text";
      return false;
    }
    if (rec.contains("id")) {
      if (!rec["id"].is_string() || rec["id"].get<std::string>().empty()) {
        why = "field id is not a non-empty string";
        return false;
      }
      doc.id = rec["id"].get<std::string>();
    } else {
      doc.id = stem_of(path_) + ":" + std::to_string(line_no_);
    }
    if (ids_.seen_before(doc.id)) {
      why = "duplicate id '" + doc.id + "'";
      return false;
    }
    doc.lang = options_.default_lang;
    if (rec.contains("lang")) {
      if (!rec["lang"].is_string()) {
        why = "field lang is not a string";
        return false;
      }
      auto lang = parse_lang(rec["lang"].get<std::string>());
      if (!lang) {
        why = "invalid lang '" + rec["lang"].get<std::string>() + "'";
        return false;
      }
      doc.lang = *lang;
    }
    doc.source = options_.default_source;
    if (!options_.override_source && rec.contains("source")) {
      if (!rec["source"].is_string()) {
        why = "field source is not a string";
        return false;
      }
      doc.source = rec["source"].get<std::string>();
    }
    return true;
  }

  std::filesystem::path path_;
  LoaderOptions options_;
  std::ifstream in_;
  std::uint64_t line_no_ = 0;
  std::uint64_t skipped_ = 0;
  IdTracker ids_;
};

class TextDirSource : public DocumentSource {
 public:
  TextDirSource(const std::filesystem::path& dir, LoaderOptions options)
      : dir_(dir), options_(std::move(options)) {
    std::error_code ec;
    if (!std::filesystem::is_directory(dir, ec))
      throw Error("cannot open corpus directory: " + dir.string());
    for (const auto& entry : std::filesystem::directory_iterator(dir)) {
      if (entry.is_regular_file() && entry.path().extension() == ".txt")
        files_.push_back(entry.path());
    }
    std::sort(files_.begin(), files_.end(),
              [](const std::filesystem::path& a,
                 const std::filesystem::path& b) {
                return a.filename().string() < b.filename().string();
              });
    if (options_.default_source.empty())
      options_.default_source = dir.filename().string();
  }

  std::optional<Document> next() override {
    while (pos_ < files_.size()) {
      const std::filesystem::path& file = files_[pos_++];
      std::string text = read_file(file);
      std::string why;
      if (!utf8_valid(text)) {
        why = "invalid UTF-8";
      } else if (text.empty() && !options_.allow_empty_text) {
        why = "empty text";
      } else {
        Document doc;
        doc.id = stem_of(file);
        doc.text = std::move(text);
        doc.source = options_.default_source;
        doc.lang = options_.default_lang;
        return doc;
      }
      if (!options_.skip_malformed)
        throw Error(file.string() + ": " + why);
      ++skipped_;
      log_warn(file.string() + ": " + why + " (skipped)");
    }
    return std::nullopt;
  }

  std::uint64_t skipped() const override { return skipped_; }

 private:
  std::filesystem::path dir_;
  LoaderOptions options_;
  std::vector<std::filesystem::path> files_;
  std::size_t pos_ = 0;
  std::uint64_t skipped_ = 0;
};

}  // namespace

std::string_view to_string(CorpusFormat format) {
  return format == CorpusFormat::jsonl ? "jsonl" : "textdir";
}

std::optional<CorpusFormat> parse_corpus_format(std::string_view name) {
  if (name == "jsonl") return CorpusFormat::jsonl;
  if (name == "textdir") return CorpusFormat::textdir;
  return std::nullopt;
}

std::unique_ptr<DocumentSource> open_corpus(const std::filesystem::path& path,
                                            CorpusFormat format,
                                            LoaderOptions options) {
  if (format == CorpusFormat::jsonl)
    return std::make_unique<JsonlSource>(path, std::move(options));
  return std::make_unique<TextDirSource>(path, std::move(options));
}

std::uint64_t count_words(DocumentSource& docs) {
  std::uint64_t total = 0;
  while (auto doc = docs.next()) total += count_tokens(doc->text);
  return total;
}

std::uint64_t count_words(const std::vector<Document>& docs) {
  std::uint64_t total = 0;
  for (const Document& doc : docs) total += count_tokens(doc.text);
  return total;
}

std::vector<Document> drain(DocumentSource& docs) {
  std::vector<Document> out;
  while (auto doc = docs.next()) out.push_back(std::move(*doc));
  return out;
}

void JsonlWriter::write(const Document& doc) {
  ordered_json rec;
  rec["id"] = doc.id;
  if (doc.lang != Lang::unknown) rec["lang"] = to_string(doc.lang);
  if (!doc.source.empty()) rec["source"] = doc.source;
  rec["text"] = doc.text;
  out_ << rec.dump() << '\n';
}

void write_textdir(const std::filesystem::path& dir,
                   const std::vector<Document>& docs) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create directory: " + dir.string());
  for (const Document& doc : docs) {
    if (doc.id.empty() || doc.id.find('/') != std::string::npos)
      throw Error("document id not usable as filename: '" + doc.id + "'");
    write_file_atomic(dir / (doc.id + ".txt"), doc.text);
  }
}

}  // namespace corpkit
