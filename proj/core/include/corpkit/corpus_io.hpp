#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <vector>

#include "corpkit/document.hpp"

namespace corpkit {

enum class CorpusFormat { jsonl, textdir };

std::string_view to_string(CorpusFormat format);
std::optional<CorpusFormat> parse_corpus_format(std::string_view name);

struct LoaderOptions {
  std::string default_source;        // applied when a record names none
  Lang default_lang = Lang::unknown;
  bool skip_malformed = false;       // default: fail fast with line context
  bool allow_empty_text = false;
  bool override_source = false;      // force default_source onto every doc
};

// Ordered document stream. jsonl sources emit file order, textdir sources
// lexicographic filename order; that order is the unit of determinism for
// everything downstream.
class DocumentSource {
 public:
  virtual ~DocumentSource() = default;
  virtual std::optional<Document> next() = 0;
  // Number of records dropped so far in skip_malformed mode.
  virtual std::uint64_t skipped() const { return 0; }
};

std::unique_ptr<DocumentSource> open_corpus(const std::filesystem::path& path,
                                            CorpusFormat format,
                                            LoaderOptions options = {});

// In-memory source, mainly for tests and composition.
class VectorSource : public DocumentSource {
 public:
  explicit VectorSource(std::vector<Document> docs)
      : docs_(std::move(docs)) {}
  std::optional<Document> next() override {
    if (pos_ >= docs_.size()) return std::nullopt;
    return docs_[pos_++];
  }

 private:
  std::vector<Document> docs_;
  std::size_t pos_ = 0;
};

// Drains the source and sums token counts.
std::uint64_t count_words(DocumentSource& docs);
std::uint64_t count_words(const std::vector<Document>& docs);

std::vector<Document> drain(DocumentSource& docs);

// One record per line with fields id, lang, source, text; field order fixed
// so identical runs are byte-identical.
class JsonlWriter {
 public:
  explicit JsonlWriter(std::ostream& out) : out_(out) {}
  void write(const Document& doc);

 private:
  std::ostream& out_;
};

// One <id>.txt per document. Ids must be usable as filenames.
void write_textdir(const std::filesystem::path& dir,
                   const std::vector<Document>& docs);

}  // namespace corpkit
