#include "corpkit/dedup.hpp"

#include <algorithm>
#include <cstdlib>
#include <cstring>
#include <new>
#include <ostream>

#ifdef __linux__
#include <sys/mman.h>
#endif

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"
#include "corpkit/text.hpp"

namespace corpkit {

namespace {

constexpr std::uint64_t kShingleSeed = 0x7368;

}  // namespace

void DedupConfig::validate() const {
  if (ngram < 1) throw Error("dedup: ngram must be >= 1");
  if (threshold < 0.0 || threshold > 1.0)
    throw Error("dedup: threshold must be in [0,1]");
  if (hash_bits < 1 || hash_bits > 64)
    throw Error("dedup: hash_bits must be in [1,64]");
}

std::uint64_t DedupConfig::hash_mask() const {
  return hash_bits >= 64 ? ~std::uint64_t{0}
                         : (std::uint64_t{1} << hash_bits) - 1;
}

ShingleIndex::SlotArray::SlotArray(std::uint64_t capacity) : size(capacity) {
  const std::size_t bytes = capacity * sizeof(std::uint64_t);
  const std::size_t alignment = bytes >= (std::size_t{2} << 20) ? (std::size_t{2} << 20) : 64;
  data = static_cast<std::uint64_t*>(
      std::aligned_alloc(alignment, bytes));
  if (!data) throw std::bad_alloc();
#ifdef __linux__
  if (bytes >= (std::size_t{2} << 20)) madvise(data, bytes, MADV_HUGEPAGE);
#endif
  std::memset(data, 0, bytes);
}

ShingleIndex::SlotArray::SlotArray(SlotArray&& other) noexcept
    : data(other.data), size(other.size) {
  other.data = nullptr;
  other.size = 0;
}

ShingleIndex::SlotArray& ShingleIndex::SlotArray::operator=(
    SlotArray&& other) noexcept {
  if (this != &other) {
    std::free(data);
    data = other.data;
    size = other.size;
    other.data = nullptr;
    other.size = 0;
  }
  return *this;
}

ShingleIndex::SlotArray::~SlotArray() { std::free(data); }

ShingleIndex::ShingleIndex(std::uint64_t expected) {
  std::uint64_t capacity = 1024;
  while (capacity < expected * 2) capacity <<= 1;
  slots_ = SlotArray(capacity);
  mask_ = capacity - 1;
}

bool ShingleIndex::insert(std::uint64_t h) {
  h = fold(h);
  std::uint64_t i = h & mask_;
  while (slots_[i] != kEmpty) {
    if (slots_[i] == h) return false;
    i = (i + 1) & mask_;
  }
  slots_[i] = h;
  if (++count_ * 2 > slots_.size) grow();
  return true;
}

bool ShingleIndex::contains(std::uint64_t h) const {
  h = fold(h);
  std::uint64_t i = h & mask_;
  while (slots_[i] != kEmpty) {
    if (slots_[i] == h) return true;
    i = (i + 1) & mask_;
  }
  return false;
}

std::uint64_t ShingleIndex::count_hits(
    const std::vector<std::uint64_t>& hashes) const {
  constexpr std::size_t kBlock = 32;
  const std::size_t n = hashes.size();
  auto prefetch_block = [&](std::size_t base) {
    const std::size_t end = std::min(base + kBlock, n);
    for (std::size_t k = base; k < end; ++k)
      __builtin_prefetch(&slots_[fold(hashes[k]) & mask_], 0, 1);
  };
  std::uint64_t hits = 0;
  prefetch_block(0);
  for (std::size_t base = 0; base < n; base += kBlock) {
    prefetch_block(base + kBlock);
    const std::size_t end = std::min(base + kBlock, n);
    for (std::size_t k = base; k < end; ++k)
      hits += contains(hashes[k]) ? 1 : 0;
  }
  return hits;
}

void ShingleIndex::insert_batch(const std::vector<std::uint64_t>& hashes) {
  // Grow up front so no rehash lands mid-batch.
  while ((count_ + hashes.size()) * 2 > slots_.size) grow();
  for (std::uint64_t raw : hashes) {
    const std::uint64_t h = fold(raw);
    std::uint64_t i = h & mask_;
    while (slots_[i] != kEmpty) {
      if (slots_[i] == h) goto next;
      i = (i + 1) & mask_;
    }
    slots_[i] = h;
    ++count_;
  next:;
  }
}

std::uint64_t ShingleIndex::count_hits_and_stage(
    const std::vector<std::uint64_t>& hashes,
    std::vector<std::uint64_t>& staged_slots) const {
  constexpr std::size_t kBlock = 32;
  const std::size_t n = hashes.size();
  staged_slots.clear();
  staged_slots.resize(n);
  auto prefetch_block = [&](std::size_t base) {
    const std::size_t end = std::min(base + kBlock, n);
    for (std::size_t k = base; k < end; ++k)
      __builtin_prefetch(&slots_[fold(hashes[k]) & mask_], 0, 1);
  };
  std::uint64_t hits = 0;
  prefetch_block(0);
  for (std::size_t base = 0; base < n; base += kBlock) {
    prefetch_block(base + kBlock);
    const std::size_t end = std::min(base + kBlock, n);
    for (std::size_t k = base; k < end; ++k) {
      const std::uint64_t h = fold(hashes[k]);
      std::uint64_t i = h & mask_;
      for (;;) {
        if (slots_[i] == h) {
          ++hits;
          staged_slots[k] = kStagedHit;
          break;
        }
        if (slots_[i] == kEmpty) {
          staged_slots[k] = i;
          break;
        }
        i = (i + 1) & mask_;
      }
    }
  }
  return hits;
}

void ShingleIndex::commit_staged(const std::vector<std::uint64_t>& hashes,
                                 const std::vector<std::uint64_t>& staged_slots) {
  std::uint64_t pending = 0;
  for (std::uint64_t s : staged_slots)
    if (s != kStagedHit) ++pending;
  if ((count_ + pending) * 2 > slots_.size) {
    // Growth moves everything; the staged positions are stale.
    insert_batch(hashes);
    return;
  }
  for (std::size_t k = 0; k < hashes.size(); ++k) {
    if (staged_slots[k] == kStagedHit) continue;
    const std::uint64_t h = fold(hashes[k]);
    std::uint64_t i = staged_slots[k];
    // Another staged insert may have taken the recorded slot.
    while (slots_[i] != kEmpty) {
      if (slots_[i] == h) goto next;
      i = (i + 1) & mask_;
    }
    slots_[i] = h;
    ++count_;
  next:;
  }
}

void ShingleIndex::grow() {
  // Aggressive factors keep the number of rehash rounds small: faulting in
  // fresh slot memory costs more than the probes themselves once tables
  // reach the hundreds of megabytes.
  const std::uint64_t factor =
      slots_.size >= (std::uint64_t{16} << 20)   ? 8
      : slots_.size >= (std::uint64_t{1} << 20) ? 4
                                                : 16;
  SlotArray old = std::move(slots_);
  slots_ = SlotArray(old.size * factor);
  mask_ = slots_.size - 1;
  for (std::uint64_t k = 0; k < old.size; ++k) {
    const std::uint64_t h = old[k];
    if (h == kEmpty) continue;
    std::uint64_t i = h & mask_;
    while (slots_[i] != kEmpty) i = (i + 1) & mask_;
    slots_[i] = h;
  }
}

namespace {

// Order-sensitive combination of the n token hashes in a window, finished
// with an avalanche mix.
inline std::uint64_t combine_window(const std::uint64_t* ring, std::size_t n,
                                    std::uint64_t count) {
  std::uint64_t h = kShingleSeed;
  for (std::size_t k = 0; k < n; ++k) {
    h = (h ^ ring[(count - n + k) % n]) * 0x2545f4914f6cdd1dull;
  }
  h ^= h >> 33;
  h *= 0xff51afd7ed558ccdull;
  h ^= h >> 33;
  return h;
}

}  // namespace

DocSignature signature(std::string_view text, const DedupConfig& config) {
  config.validate();
  const std::size_t n = static_cast<std::size_t>(config.ngram);
  const std::uint64_t mask = config.hash_mask();

  DocSignature sig;
  sig.shingles.reserve(text.size() / 7 + 4);
  std::vector<std::uint64_t> ring(n);
  std::uint64_t count = 0;
  scan_token_hashes(text, [&](std::uint64_t token_hash) {
    ring[count % n] = token_hash;
    ++count;
    if (count >= n)
      sig.shingles.push_back(combine_window(ring.data(), n, count) & mask);
  });
  sig.token_count = count;

  // Set semantics: collapse repeats, keeping first-occurrence order. A small
  // open-addressing pass beats sort+unique on typical document sizes.
  if (!sig.shingles.empty()) {
    std::uint64_t capacity = 16;
    while (capacity < sig.shingles.size() * 2) capacity <<= 1;
    std::vector<std::uint64_t> seen(capacity, 0);
    const std::uint64_t local_mask = capacity - 1;
    std::size_t out = 0;
    for (std::uint64_t h : sig.shingles) {
      const std::uint64_t key = h ? h : 0x9e3779b97f4a7c15ull;
      std::uint64_t i = key & local_mask;
      bool fresh = true;
      while (seen[i] != 0) {
        if (seen[i] == key) {
          fresh = false;
          break;
        }
        i = (i + 1) & local_mask;
      }
      if (fresh) {
        seen[i] = key;
        sig.shingles[out++] = h;
      }
    }
    sig.shingles.resize(out);
  }
  return sig;
}

std::vector<std::uint64_t> shingles(std::string_view text, int ngram) {
  DedupConfig config;
  config.ngram = ngram;
  return signature(text, config).shingles;
}

std::vector<std::uint64_t> shingles(const Document& doc, int ngram) {
  return shingles(doc.text, ngram);
}

double duplication_ratio(const std::vector<std::uint64_t>& doc_shingles,
                         const ShingleIndex& index) {
  if (doc_shingles.empty()) return 0.0;
  return static_cast<double>(index.count_hits(doc_shingles)) /
         static_cast<double>(doc_shingles.size());
}

double duplication_ratio(const Document& doc, const ShingleIndex& index,
                         int ngram) {
  return duplication_ratio(shingles(doc, ngram), index);
}

Deduplicator::Deduplicator(DedupConfig config) : config_(config) {
  config_.validate();
}

DedupRow& Deduplicator::row(std::string_view source) {
  auto it = row_of_source_.find(std::string(source));
  if (it != row_of_source_.end()) return rows_[it->second];
  rows_.push_back(DedupRow{std::string(source), 0, 0, 0.0});
  row_of_source_.emplace(std::string(source), rows_.size() - 1);
  return rows_.back();
}

bool Deduplicator::offer(const Document& doc) {
  return offer(doc.text, doc.source);
}

void Deduplicator::touch(std::string_view source) { row(source); }

bool Deduplicator::offer(std::string_view text, std::string_view source) {
  DocSignature sig = signature(text, config_);
  DedupRow& r = row(source);
  r.words_before += sig.token_count;
  const std::uint64_t hits =
      index_.count_hits_and_stage(sig.shingles, staged_slots_);
  const double ratio =
      sig.shingles.empty()
          ? 0.0
          : static_cast<double>(hits) /
                static_cast<double>(sig.shingles.size());
  if (ratio > config_.threshold) {
    ++docs_dropped_;
    return false;
  }
  index_.commit_staged(sig.shingles, staged_slots_);
  r.words_after += sig.token_count;
  ++docs_kept_;
  return true;
}

DedupReport Deduplicator::report() const {
  DedupReport rep;
  rep.rows = rows_;
  rep.docs_kept = docs_kept_;
  rep.docs_dropped = docs_dropped_;
  for (const DedupRow& r : rep.rows) {
    rep.total_words_before += r.words_before;
    rep.total_words_after += r.words_after;
  }
  for (DedupRow& r : rep.rows) {
    r.share_percent = rep.total_words_after == 0
                          ? 0.0
                          : 100.0 * static_cast<double>(r.words_after) /
                                static_cast<double>(rep.total_words_after);
  }
  return rep;
}

DedupReport dedup_stream(DocumentSource& docs, const DedupConfig& config,
                         const std::function<void(const Document&)>& sink) {
  Deduplicator dedup(config);
  while (auto doc = docs.next()) {
    if (dedup.offer(*doc)) sink(*doc);
  }
  return dedup.report();
}

std::string format_share_table(const DedupReport& report) {
  std::string out = "processing order:";
  for (std::size_t i = 0; i < report.rows.size(); ++i)
    out += (i ? ", " : " ") + report.rows[i].source;
  out += "\n";

  std::size_t name_width = 6;  // "source" / "total"
  for (const DedupRow& r : report.rows)
    name_width = std::max(name_width, r.source.size());

  auto line = [&](std::string_view name, std::uint64_t before,
                  std::uint64_t after, double share) {
    std::string row(name);
    row.append(name_width - name.size() + 2, ' ');
    std::string b = std::to_string(before);
    std::string a = std::to_string(after);
    row.append(14 > b.size() ? 14 - b.size() : 0, ' ');
    row += b;
    row.append(14 > a.size() ? 14 - a.size() : 0, ' ');
    row += a;
    std::string s = format_fixed(share, 2) + "%";
    row.append(10 > s.size() ? 10 - s.size() : 0, ' ');
    row += s;
    out += row + "\n";
  };

  std::string header("source");
  header.append(name_width - 6 + 2, ' ');
  header += "  words_before   words_after     share\n";
  out += header;
  for (const DedupRow& r : report.rows)
    line(r.source, r.words_before, r.words_after, r.share_percent);
  line("total", report.total_words_before, report.total_words_after,
       report.total_words_after == 0 ? 0.0 : 100.0);
  return out;
}

void write_report_csv(const DedupReport& report, std::ostream& out) {
  out << "source,words_before,words_after,share_percent\n";
  for (const DedupRow& r : report.rows) {
    out << csv_field(r.source) << ',' << r.words_before << ','
        << r.words_after << ',' << format_fixed(r.share_percent, 2) << '\n';
  }
  out << "total," << report.total_words_before << ','
      << report.total_words_after << ','
      << format_fixed(report.total_words_after == 0 ? 0.0 : 100.0, 2) << '\n';
}

}  // namespace corpkit
