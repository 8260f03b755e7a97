#pragma once

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

#include "corpkit/corpus_io.hpp"
#include "corpkit/dedup.hpp"
#include "corpkit/freq.hpp"
#include "corpkit/similarity.hpp"
#include "corpkit/variant.hpp"

namespace corpkit {

struct SourceSpec {
  std::string name;
  std::filesystem::path path;
  CorpusFormat format = CorpusFormat::jsonl;
  Lang lang = Lang::unknown;
  bool split = false;  // run the variant classifier, two report rows
};

// Aggregation run configuration. Deduplication results depend on source
// order, so the order of [source] sections in the file is the processing
// order and is logged with the config digest on every run.
struct PipelineConfig {
  std::vector<SourceSpec> sources;
  DedupConfig dedup;
  ClassifierConfig classifier;
  std::filesystem::path markers_path;  // empty: built-in marker pairs
  std::filesystem::path output_corpus;
  std::filesystem::path output_report;
  bool skip_malformed = false;
  bool allow_empty_text = false;
  std::string digest;  // of the raw config bytes

  static PipelineConfig parse(std::string_view content,
                              const std::filesystem::path& base_dir);
  static PipelineConfig load(const std::filesystem::path& path);
  void validate() const;

  // Canonical rendering of the effective configuration; the digest is taken
  // over this, so equivalent configs hash alike however they were supplied.
  std::string describe() const;
};

struct AggregateResult {
  DedupReport report;
};

// Classify-split marked sources, deduplicate the concatenated stream in
// config order, write the umbrella corpus and the share report atomically.
// With more than one source, document ids are prefixed "<source>/" so they
// stay unique across the output.
AggregateResult aggregate(const PipelineConfig& config);

struct EvalParams {
  ExcerptSpec excerpt;
  std::size_t top_k = 1000;
  int power = 10;
  int threads = 1;
  std::filesystem::path matrix_out;
  std::filesystem::path ranking_out;
  std::filesystem::path graph_out;
  std::filesystem::path profiles_out_dir;  // optional
};

struct EvalResult {
  SimilarityMatrix matrix;
  std::vector<std::string> ranking;
};

struct EvalInput {
  std::string name;
  std::filesystem::path path;
  CorpusFormat format = CorpusFormat::jsonl;
};

// Excerpt → frequency profile → feature union → similarity matrix, ranking
// and graph, written atomically. Errors carry the failing stage name.
EvalResult run_eval(const std::vector<EvalInput>& corpora,
                    const EvalParams& params, bool skip_malformed = false,
                    bool allow_empty_text = false);

// Same, starting from already-computed top-k profiles.
EvalResult run_eval_profiles(const std::vector<TopProfile>& profiles,
                             const EvalParams& params);

}  // namespace corpkit
