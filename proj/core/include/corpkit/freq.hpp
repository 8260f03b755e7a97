#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "corpkit/corpus_io.hpp"
#include "corpkit/text.hpp"

namespace corpkit {

struct ExcerptSpec {
  std::uint64_t size_words = 1'000'000;
  enum class Strategy { head, shuffled };
  // head takes documents in stream order; web corpora are often topically
  // ordered, so consider shuffled for sampling-sensitive comparisons.
  Strategy strategy = Strategy::head;
  std::uint64_t seed = 0;       // shuffled only; fixed seed ⇒ fixed excerpt
  bool allow_short = false;     // accept corpora with fewer tokens

  void validate() const;
};

std::string_view to_string(ExcerptSpec::Strategy strategy);
std::optional<ExcerptSpec::Strategy> parse_strategy(std::string_view name);

struct FrequencyProfile {
  std::string corpus_name;
  std::uint64_t total_tokens = 0;
  std::unordered_map<std::string, std::uint64_t> counts;
  // Sorted by count descending, ties lexicographic ascending; filled by
  // build_top.
  std::vector<std::pair<std::string, double>> top;  // (word, per_million)
};

// Exactly size_words tokens (head: concatenate documents in order and
// truncate the last; shuffled: permute document order with the seed first).
// Fewer available tokens is an error unless allow_short is set.
TokenStream sample_excerpt(DocumentSource& docs, const ExcerptSpec& spec);

FrequencyProfile frequency_table(const TokenStream& tokens,
                                 std::string corpus_name);

// The k highest-count words; ties broken lexicographically ascending, so
// top_k(k1) is a prefix of top_k(k2) for k1 < k2.
std::vector<std::string> top_k(const FrequencyProfile& profile, std::size_t k);

// Fills profile.top with the top-k words and their per-million frequencies.
void build_top(FrequencyProfile& profile, std::size_t k);

// count × 10⁶ / total_tokens; 0 for absent words. Errors on an empty
// profile.
double per_million(const FrequencyProfile& profile, std::string_view word);

// TSV with header rank\tword\tcount\tper_million, one row per top entry.
void write_profile_tsv(const FrequencyProfile& profile, std::ostream& out);

// Name + top list, which is all the similarity stage needs.
struct TopProfile {
  std::string corpus_name;
  std::vector<std::pair<std::string, double>> top;  // (word, per_million)
};

TopProfile to_top_profile(const FrequencyProfile& profile);
TopProfile read_profile_tsv(const std::filesystem::path& path,
                            std::string corpus_name);

}  // namespace corpkit
