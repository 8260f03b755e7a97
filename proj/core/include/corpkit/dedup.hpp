#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "corpkit/corpus_io.hpp"
#include "corpkit/document.hpp"

namespace corpkit {

struct DedupConfig {
  int ngram = 6;            // shingle length in tokens
  double threshold = 0.75;  // drop when strictly above
  int hash_bits = 64;       // shingle hash width; lower widths mask down

  void validate() const;
  std::uint64_t hash_mask() const;
};

// Open-addressing set of 64-bit shingle hashes. This is the only state the
// deduplicator keeps between documents, so memory stays proportional to the
// number of distinct retained shingles. The slot array is backed by huge
// pages where the OS offers them: the table sees uniformly random probes,
// and at multi-gigabyte sizes TLB walks otherwise dominate the probe cost.
class ShingleIndex {
 public:
  explicit ShingleIndex(std::uint64_t expected = 0);

  // Returns true when the hash was new.
  bool insert(std::uint64_t h);
  bool contains(std::uint64_t h) const;
  std::uint64_t size() const { return count_; }

  // Batched membership count and insertion with prefetching; the hot path
  // for whole-document shingle sets.
  std::uint64_t count_hits(const std::vector<std::uint64_t>& hashes) const;
  void insert_batch(const std::vector<std::uint64_t>& hashes);

  // Single-pass variant: counts hits and records each miss's probe endpoint
  // so a following commit_staged writes without re-probing. The staged slots
  // are valid only while the index is unmodified in between.
  static constexpr std::uint64_t kStagedHit = ~std::uint64_t{0};
  std::uint64_t count_hits_and_stage(
      const std::vector<std::uint64_t>& hashes,
      std::vector<std::uint64_t>& staged_slots) const;
  void commit_staged(const std::vector<std::uint64_t>& hashes,
                     const std::vector<std::uint64_t>& staged_slots);

 private:
  static constexpr std::uint64_t kEmpty = 0;
  // The zero hash is remapped so the empty-slot sentinel stays unambiguous.
  static std::uint64_t fold(std::uint64_t h) {
    return h == 0 ? 0x9e3779b97f4a7c15ull : h;
  }
  void grow();

  // Zero-initialized slot array on 2 MiB-aligned storage.
  struct SlotArray {
    SlotArray() = default;
    explicit SlotArray(std::uint64_t capacity);
    SlotArray(SlotArray&&) noexcept;
    SlotArray& operator=(SlotArray&&) noexcept;
    SlotArray(const SlotArray&) = delete;
    SlotArray& operator=(const SlotArray&) = delete;
    ~SlotArray();

    std::uint64_t& operator[](std::uint64_t i) { return data[i]; }
    const std::uint64_t& operator[](std::uint64_t i) const { return data[i]; }

    std::uint64_t* data = nullptr;
    std::uint64_t size = 0;
  };

  SlotArray slots_;
  std::uint64_t mask_;
  std::uint64_t count_ = 0;
};

// Hashed shingle set plus token count, computed in one tokenizer pass.
struct DocSignature {
  std::vector<std::uint64_t> shingles;  // sorted, unique
  std::uint64_t token_count = 0;
};

DocSignature signature(std::string_view text, const DedupConfig& config);

// Set of hashes of every window of n consecutive tokens. Documents shorter
// than n tokens yield the empty set.
std::vector<std::uint64_t> shingles(std::string_view text, int ngram);
std::vector<std::uint64_t> shingles(const Document& doc, int ngram);

// |shingles ∩ index| / |shingles|; 0 for documents with no shingles.
double duplication_ratio(const std::vector<std::uint64_t>& doc_shingles,
                         const ShingleIndex& index);
double duplication_ratio(const Document& doc, const ShingleIndex& index,
                         int ngram);

struct DedupRow {
  std::string source;
  std::uint64_t words_before = 0;
  std::uint64_t words_after = 0;
  double share_percent = 0.0;  // words_after / total words_after × 100
};

struct DedupReport {
  std::vector<DedupRow> rows;  // first-seen source order
  std::uint64_t total_words_before = 0;
  std::uint64_t total_words_after = 0;
  std::uint64_t docs_kept = 0;
  std::uint64_t docs_dropped = 0;
};

// Sequential keep/drop gate. The decision for each document depends on every
// earlier kept document, so offer() order defines the semantics.
class Deduplicator {
 public:
  explicit Deduplicator(DedupConfig config);

  // True: keep (shingles entered the index). False: drop.
  bool offer(const Document& doc);
  bool offer(std::string_view text, std::string_view source);

  // Registers a report row for a source before any of its documents arrive,
  // pinning the row order for sources that may turn out empty.
  void touch(std::string_view source);

  DedupReport report() const;
  const ShingleIndex& index() const { return index_; }

 private:
  DedupConfig config_;
  ShingleIndex index_;
  std::vector<DedupRow> rows_;
  std::unordered_map<std::string, std::size_t> row_of_source_;
  std::vector<std::uint64_t> staged_slots_;  // scratch for offer()
  std::uint64_t docs_kept_ = 0;
  std::uint64_t docs_dropped_ = 0;

  DedupRow& row(std::string_view source);
};

// Drives a source through a Deduplicator, passing kept documents to sink in
// input order.
DedupReport dedup_stream(DocumentSource& docs, const DedupConfig& config,
                         const std::function<void(const Document&)>& sink);

// Human-readable table: processing order header, one row per source, totals
// row, shares to two decimals.
std::string format_share_table(const DedupReport& report);

// CSV: source,words_before,words_after,share_percent with a totals row.
void write_report_csv(const DedupReport& report, std::ostream& out);

}  // namespace corpkit
