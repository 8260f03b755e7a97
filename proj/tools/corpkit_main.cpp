// Command-line front end: dedup, classify, freq, sim, extract, aggregate and
// eval subcommands over the corpkit core library. All file outputs are
// written to a temp file and renamed into place, so a nonzero exit never
// leaves partial files at the final paths.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "corpkit/corpus_io.hpp"
#include "corpkit/dedup.hpp"
#include "corpkit/dissertation.hpp"
#include "corpkit/error.hpp"
#include "corpkit/freq.hpp"
#include "corpkit/io_util.hpp"
#include "corpkit/pipeline.hpp"
#include "corpkit/similarity.hpp"
#include "corpkit/variant.hpp"
#include "corpkit/version.hpp"

namespace {

using namespace corpkit;

CorpusFormat format_or_throw(const std::string& name) {
  auto fmt = parse_corpus_format(name);
  if (!fmt) throw Error("unknown format '" + name + "'");
  return *fmt;
}

std::string stem_of(const std::filesystem::path& path) {
  std::string stem = path.stem().string();
  return stem.empty() ? path.filename().string() : stem;
}

// --- dedup -------------------------------------------------------------

struct DedupArgs {
  std::vector<std::string> inputs;
  std::string format = "jsonl";
  std::string output;
  std::string report;
  DedupConfig config;
  bool skip_malformed = false;
  bool allow_empty = false;
};

void run_dedup(const DedupArgs& args) {
  PipelineConfig config;
  config.dedup = args.config;
  config.output_corpus = args.output;
  config.output_report = args.report;
  config.skip_malformed = args.skip_malformed;
  config.allow_empty_text = args.allow_empty;
  CorpusFormat fmt = format_or_throw(args.format);
  for (const std::string& input : args.inputs) {
    SourceSpec source;
    source.name = stem_of(input);
    source.path = input;
    source.format = fmt;
    config.sources.push_back(std::move(source));
  }
  aggregate(config);
}

// --- classify ----------------------------------------------------------

struct ClassifyArgs {
  std::string input;
  std::string format = "jsonl";
  std::string markers;
  std::string out_sr;
  std::string out_hr;
  std::string verdicts;
  ClassifierConfig config;
  std::string tie_break = "serbian";
  bool skip_malformed = false;
  bool allow_empty = false;
};

void run_classify(const ClassifyArgs& args) {
  ClassifierConfig config = args.config;
  auto tb = parse_tie_break(args.tie_break);
  if (!tb) throw Error("unknown tie-break '" + args.tie_break + "'");
  config.tie_break = *tb;
  config.validate();

  MarkerLexicon lexicon = args.markers.empty()
                              ? MarkerLexicon::defaults()
                              : MarkerLexicon::from_tsv(args.markers);

  LoaderOptions options;
  options.skip_malformed = args.skip_malformed;
  options.allow_empty_text = args.allow_empty;
  auto docs = open_corpus(args.input, format_or_throw(args.format), options);

  AtomicFile out_sr(args.out_sr);
  AtomicFile out_hr(args.out_hr);
  std::unique_ptr<AtomicFile> verdicts;
  if (!args.verdicts.empty()) {
    verdicts = std::make_unique<AtomicFile>(args.verdicts);
    verdicts->stream() << "id,label,sr_votes,hr_votes,je_ratio\n";
  }
  JsonlWriter sr_writer(out_sr.stream());
  JsonlWriter hr_writer(out_hr.stream());

  auto record_verdict = [&](const Document& doc, const VariantVerdict& v) {
    if (verdicts) {
      verdicts->stream() << csv_field(doc.id) << ',' << to_string(v.label)
                         << ',' << v.sr_votes << ',' << v.hr_votes << ','
                         << format_fixed(v.je_ratio, 6) << '\n';
    }
  };
  SplitCounts counts = split_corpus(
      *docs, lexicon, config,
      [&](const Document& doc, const VariantVerdict& v) {
        sr_writer.write(doc);
        record_verdict(doc, v);
      },
      [&](const Document& doc, const VariantVerdict& v) {
        hr_writer.write(doc);
        record_verdict(doc, v);
      });

  out_sr.commit();
  out_hr.commit();
  if (verdicts) verdicts->commit();
  log_info("classified " + std::to_string(counts.sr_docs) + " sr / " +
           std::to_string(counts.hr_docs) + " hr documents");
}

// --- freq --------------------------------------------------------------

struct FreqArgs {
  std::string input;
  std::string format = "jsonl";
  std::string out;
  std::uint64_t excerpt_words = 1'000'000;
  std::size_t top = 1000;
  std::string strategy = "head";
  std::uint64_t seed = 0;
  bool allow_short = false;
  bool skip_malformed = false;
  bool allow_empty = false;
};

void run_freq(const FreqArgs& args) {
  ExcerptSpec spec;
  spec.size_words = args.excerpt_words;
  auto strategy = parse_strategy(args.strategy);
  if (!strategy) throw Error("unknown strategy '" + args.strategy + "'");
  spec.strategy = *strategy;
  spec.seed = args.seed;
  spec.allow_short = args.allow_short;

  LoaderOptions options;
  options.skip_malformed = args.skip_malformed;
  options.allow_empty_text = args.allow_empty;
  auto docs = open_corpus(args.input, format_or_throw(args.format), options);
  TokenStream excerpt = sample_excerpt(*docs, spec);
  FrequencyProfile profile = frequency_table(excerpt, stem_of(args.input));
  build_top(profile, args.top);

  AtomicFile out(args.out);
  write_profile_tsv(profile, out.stream());
  out.commit();
  log_info("profile '" + profile.corpus_name + "': " +
           std::to_string(profile.total_tokens) + " tokens, top " +
           std::to_string(profile.top.size()));
}

// --- sim ---------------------------------------------------------------

struct SimArgs {
  std::vector<std::string> profiles;
  std::size_t k = 1000;
  int power = 10;
  std::string matrix_out;
  std::string graph_out;
  std::string ranking_out;
};

void run_sim(const SimArgs& args, int threads) {
  std::vector<TopProfile> profiles;
  profiles.reserve(args.profiles.size());
  for (const std::string& path : args.profiles)
    profiles.push_back(read_profile_tsv(path, stem_of(path)));

  EvalParams params;
  params.top_k = args.k;
  params.power = args.power;
  params.threads = threads;
  params.matrix_out = args.matrix_out;
  params.ranking_out = args.ranking_out;
  params.graph_out = args.graph_out;
  run_eval_profiles(profiles, params);
}

// --- extract -----------------------------------------------------------

struct ExtractArgs {
  std::string metadata;
  std::string texts;
  std::string patterns;
  std::string pairs_out;
  std::string metadata_out;
  std::string report;
  std::size_t min_chars = 500;
  bool skip_malformed = false;
};

void run_extract(const ExtractArgs& args) {
  std::vector<DissertationRecord> records =
      load_metadata_jsonl(args.metadata, args.skip_malformed);
  SectionPatterns patterns = args.patterns.empty()
                                 ? SectionPatterns::defaults()
                                 : SectionPatterns::load(args.patterns);
  const std::filesystem::path texts(args.texts);

  // Fill enrichment fields that can be derived from what we have.
  for (DissertationRecord& rec : records) {
    if (!rec.srpski &&
        !(rec.dc_language.empty() && rec.dc_language_iso.empty()))
      rec.srpski = derive_srpski(rec.dc_language, rec.dc_language_iso);
    if (!rec.arr && !rec.dc_rights_license.empty())
      rec.arr = derive_arr(rec.dc_rights_license);
    if (!rec.need_ocr) {
      std::filesystem::path probe = texts / (rec.id + ".p10.txt");
      std::error_code ec;
      if (std::filesystem::exists(probe, ec))
        rec.need_ocr = derive_need_ocr(read_file(probe), args.min_chars);
    }
  }

  std::vector<DissertationRecord> candidates = filter_candidates(records);
  log_info(std::to_string(candidates.size()) + " of " +
           std::to_string(records.size()) + " records are candidates");

  std::vector<CandidateExtraction> extractions;
  extractions.reserve(candidates.size());
  for (const DissertationRecord& rec : candidates) {
    CandidateExtraction cand;
    cand.record = rec;
    std::filesystem::path file = texts / (rec.id + ".txt");
    std::error_code ec;
    if (!std::filesystem::exists(file, ec)) {
      cand.sr.failure_reason = "fulltext file missing";
      cand.en.failure_reason = "fulltext file missing";
      extractions.push_back(std::move(cand));
      continue;
    }
    std::string fulltext = read_file(file);
    cand.layout = detect_layout(fulltext, patterns, rec.layout_override);
    if (cand.layout == Layout::inline_text) {
      cand.sr = extract_inline(fulltext, patterns, LangSide::sr,
                               rec.partial_abstract_sr
                                   ? std::optional<std::string_view>(
                                         *rec.partial_abstract_sr)
                                   : std::nullopt);
      cand.en = extract_inline(fulltext, patterns, LangSide::en,
                               rec.partial_abstract_en
                                   ? std::optional<std::string_view>(
                                         *rec.partial_abstract_en)
                                   : std::nullopt);
    } else {
      auto both = extract_kwd_table(fulltext, patterns);
      cand.sr = std::move(both.first);
      cand.en = std::move(both.second);
    }
    extractions.push_back(std::move(cand));
  }

  PairBuildResult result = build_pairs(extractions);

  // Merge updated candidates back into the full record list by id.
  std::unordered_map<std::string_view, const DissertationRecord*> updated;
  for (const DissertationRecord& rec : result.updated)
    updated.emplace(rec.id, &rec);
  std::vector<DissertationRecord> all_out;
  all_out.reserve(records.size());
  for (const DissertationRecord& rec : records) {
    auto it = updated.find(rec.id);
    all_out.push_back(it == updated.end() ? rec : *it->second);
  }

  AtomicFile pairs_file(args.pairs_out);
  write_pairs_jsonl(result.pairs, pairs_file.stream());
  AtomicFile metadata_file(args.metadata_out);
  write_metadata_jsonl(all_out, metadata_file.stream());
  AtomicFile report_file(args.report);
  report_file.stream() << "id,reason\n";
  for (const auto& [id, reason] : result.failures)
    report_file.stream() << csv_field(id) << ',' << csv_field(reason) << '\n';
  pairs_file.commit();
  metadata_file.commit();
  report_file.commit();

  std::size_t paired = 0, partial = 0, failed = 0;
  for (RecordState st : result.states) {
    if (st == RecordState::paired) ++paired;
    else if (st == RecordState::partial) ++partial;
    else ++failed;
  }
  log_info("pairs: " + std::to_string(paired) + ", partial: " +
           std::to_string(partial) + ", failed: " + std::to_string(failed));
}

// --- eval --------------------------------------------------------------

struct EvalArgs {
  std::vector<std::string> inputs;
  std::string format = "jsonl";
  std::uint64_t excerpt_words = 1'000'000;
  std::size_t top = 1000;
  std::string strategy = "head";
  std::uint64_t seed = 0;
  int power = 10;
  std::string matrix_out;
  std::string ranking_out;
  std::string graph_out;
  std::string profiles_out;
  bool allow_short = false;
  bool skip_malformed = false;
  bool allow_empty = false;
};

void run_eval_cmd(const EvalArgs& args, int threads) {
  EvalParams params;
  params.excerpt.size_words = args.excerpt_words;
  auto strategy = parse_strategy(args.strategy);
  if (!strategy) throw Error("unknown strategy '" + args.strategy + "'");
  params.excerpt.strategy = *strategy;
  params.excerpt.seed = args.seed;
  params.excerpt.allow_short = args.allow_short;
  params.top_k = args.top;
  params.power = args.power;
  params.threads = threads;
  params.matrix_out = args.matrix_out;
  params.ranking_out = args.ranking_out;
  params.graph_out = args.graph_out;
  params.profiles_out_dir = args.profiles_out;

  CorpusFormat fmt = format_or_throw(args.format);
  std::vector<EvalInput> corpora;
  corpora.reserve(args.inputs.size());
  for (const std::string& input : args.inputs)
    corpora.push_back(EvalInput{stem_of(input), input, fmt});

  EvalResult result =
      run_eval(corpora, params, args.skip_malformed, args.allow_empty);
  std::string ranking = "uniqueness ranking:";
  for (std::size_t i = 0; i < result.ranking.size(); ++i)
    ranking += (i ? ", " : " ") + result.ranking[i];
  log_info(ranking);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"corpus construction and evaluation toolkit"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string("corpkit ") + kVersion);

  int threads = 1;
  app.add_option("--threads", threads, "worker threads for parallel stages")
      ->capture_default_str();
  std::string log_level_name = "info";
  app.add_option("--log-level", log_level_name, "error|warn|info|debug")
      ->capture_default_str()
      ->check(CLI::IsMember({"error", "warn", "info", "debug"}));

  DedupArgs dedup_args;
  auto* dedup_cmd = app.add_subcommand(
      "dedup", "fuzzy-deduplicate corpora over word n-grams");
  dedup_cmd->add_option("--input", dedup_args.inputs, "input corpora, in order")
      ->required()
      ->expected(-1);
  dedup_cmd->add_option("--format", dedup_args.format, "jsonl|textdir")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  dedup_cmd->add_option("--ngram", dedup_args.config.ngram, "shingle length")
      ->capture_default_str();
  dedup_cmd
      ->add_option("--threshold", dedup_args.config.threshold,
                   "drop documents with duplication ratio above this")
      ->capture_default_str();
  dedup_cmd
      ->add_option("--hash-bits", dedup_args.config.hash_bits,
                   "shingle hash width")
      ->capture_default_str();
  dedup_cmd->add_option("--output", dedup_args.output, "kept documents jsonl")
      ->required();
  dedup_cmd->add_option("--report", dedup_args.report, "share report csv")
      ->required();
  dedup_cmd->add_flag("--skip-malformed", dedup_args.skip_malformed,
                      "warn and skip malformed records instead of failing");
  dedup_cmd->add_flag("--allow-empty", dedup_args.allow_empty,
                      "accept documents with empty text");

  ClassifyArgs classify_args;
  auto* classify_cmd = app.add_subcommand(
      "classify", "split a corpus into Serbian and non-Serbian halves");
  classify_cmd->add_option("--input", classify_args.input, "input corpus")
      ->required();
  classify_cmd->add_option("--format", classify_args.format, "jsonl|textdir")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  classify_cmd->add_option("--markers", classify_args.markers,
                           "marker lexicon tsv (hr_form<TAB>sr_form)");
  classify_cmd
      ->add_option("--je-threshold",
                   classify_args.config.je_ratio_threshold,
                   "je/e ratio above which a document gets an Ijekavian vote")
      ->capture_default_str();
  classify_cmd
      ->add_option("--je-vote-weight", classify_args.config.je_vote_weight,
                   "weight of the Ijekavian vote")
      ->capture_default_str();
  classify_cmd
      ->add_option("--tie-break", classify_args.tie_break,
                   "serbian|croatian|unknown")
      ->capture_default_str()
      ->check(CLI::IsMember({"serbian", "croatian", "unknown"}));
  classify_cmd->add_option("--out-sr", classify_args.out_sr, "Serbian half")
      ->required();
  classify_cmd->add_option("--out-hr", classify_args.out_hr,
                           "non-Serbian half")
      ->required();
  classify_cmd->add_option("--verdicts", classify_args.verdicts,
                           "per-document verdict csv");
  classify_cmd->add_flag("--skip-malformed", classify_args.skip_malformed,
                         "warn and skip malformed records");
  classify_cmd->add_flag("--allow-empty", classify_args.allow_empty,
                         "accept documents with empty text");

  FreqArgs freq_args;
  auto* freq_cmd = app.add_subcommand(
      "freq", "word-frequency profile of a corpus excerpt");
  freq_cmd->add_option("--input", freq_args.input, "input corpus")->required();
  freq_cmd->add_option("--format", freq_args.format, "jsonl|textdir")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  freq_cmd
      ->add_option("--excerpt-words", freq_args.excerpt_words,
                   "excerpt size in tokens")
      ->capture_default_str();
  freq_cmd->add_option("--top", freq_args.top, "profile size")
      ->capture_default_str();
  freq_cmd->add_option("--strategy", freq_args.strategy, "head|shuffled")
      ->capture_default_str()
      ->check(CLI::IsMember({"head", "shuffled"}));
  freq_cmd->add_option("--seed", freq_args.seed, "shuffle seed")
      ->capture_default_str();
  freq_cmd->add_flag("--allow-short", freq_args.allow_short,
                     "accept corpora smaller than the excerpt");
  freq_cmd->add_option("--out", freq_args.out, "profile tsv")->required();
  freq_cmd->add_flag("--skip-malformed", freq_args.skip_malformed,
                     "warn and skip malformed records");
  freq_cmd->add_flag("--allow-empty", freq_args.allow_empty,
                     "accept documents with empty text");

  SimArgs sim_args;
  auto* sim_cmd = app.add_subcommand(
      "sim", "similarity matrix over stored frequency profiles");
  sim_cmd->add_option("--profiles", sim_args.profiles, "profile tsv files")
      ->required()
      ->expected(-1);
  sim_cmd->add_option("--k", sim_args.k, "top-k words per profile")
      ->capture_default_str();
  sim_cmd->add_option("--pow", sim_args.power, "cosine power")
      ->capture_default_str();
  sim_cmd->add_option("--matrix-out", sim_args.matrix_out, "matrix csv")
      ->required();
  sim_cmd->add_option("--graph-out", sim_args.graph_out, "graph dot file");
  sim_cmd->add_option("--ranking-out", sim_args.ranking_out,
                      "uniqueness ranking csv");

  ExtractArgs extract_args;
  auto* extract_cmd = app.add_subcommand(
      "extract", "extract parallel abstracts from dissertation texts");
  extract_cmd
      ->add_option("--metadata", extract_args.metadata, "metadata jsonl")
      ->required();
  extract_cmd
      ->add_option("--texts", extract_args.texts,
                   "directory of <id>.txt fulltexts")
      ->required();
  extract_cmd->add_option("--patterns", extract_args.patterns,
                          "directory with sections.json pattern sets");
  extract_cmd->add_option("--pairs-out", extract_args.pairs_out,
                          "parallel abstract pairs jsonl")
      ->required();
  extract_cmd
      ->add_option("--metadata-out", extract_args.metadata_out,
                   "updated metadata jsonl")
      ->required();
  extract_cmd->add_option("--report", extract_args.report,
                          "failure report csv")
      ->required();
  extract_cmd
      ->add_option("--min-chars", extract_args.min_chars,
                   "minimum extracted characters before OCR is needed")
      ->capture_default_str();
  extract_cmd->add_flag("--skip-malformed", extract_args.skip_malformed,
                        "warn and skip malformed records");

  std::string aggregate_config;
  auto* aggregate_cmd = app.add_subcommand(
      "aggregate", "build an umbrella corpus from a config file");
  aggregate_cmd->add_option("--config", aggregate_config, "pipeline config")
      ->required();

  EvalArgs eval_args;
  auto* eval_cmd = app.add_subcommand(
      "eval", "frequency profiles, similarity matrix, ranking and graph");
  eval_cmd->add_option("--input", eval_args.inputs, "input corpora")
      ->required()
      ->expected(-1);
  eval_cmd->add_option("--format", eval_args.format, "jsonl|textdir")
      ->capture_default_str()
      ->check(CLI::IsMember({"jsonl", "textdir"}));
  eval_cmd
      ->add_option("--excerpt-words", eval_args.excerpt_words,
                   "excerpt size in tokens")
      ->capture_default_str();
  eval_cmd->add_option("--top", eval_args.top, "top-k words per corpus")
      ->capture_default_str();
  eval_cmd->add_option("--strategy", eval_args.strategy, "head|shuffled")
      ->capture_default_str()
      ->check(CLI::IsMember({"head", "shuffled"}));
  eval_cmd->add_option("--seed", eval_args.seed, "shuffle seed")
      ->capture_default_str();
  eval_cmd->add_option("--pow", eval_args.power, "cosine power")
      ->capture_default_str();
  eval_cmd->add_option("--matrix-out", eval_args.matrix_out, "matrix csv")
      ->required();
  eval_cmd
      ->add_option("--ranking-out", eval_args.ranking_out,
                   "uniqueness ranking csv")
      ->required();
  eval_cmd->add_option("--graph-out", eval_args.graph_out, "graph dot file")
      ->required();
  eval_cmd->add_option("--profiles-out", eval_args.profiles_out,
                       "directory for per-corpus profile tsvs");
  eval_cmd->add_flag("--allow-short", eval_args.allow_short,
                     "accept corpora smaller than the excerpt");
  eval_cmd->add_flag("--skip-malformed", eval_args.skip_malformed,
                     "warn and skip malformed records");
  eval_cmd->add_flag("--allow-empty", eval_args.allow_empty,
                     "accept documents with empty text");

  // Let global flags like --threads and --log-level appear after the
  // subcommand as well.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; }))
    sub->fallthrough();

  try {
    app.parse(argc, argv);
    set_log_level(*parse_log_level(log_level_name));
    if (threads < 1) throw Error("--threads must be >= 1");

    // Log the toolkit version and an invocation digest so any run can be
    // tied back to the exact flags that produced its outputs.
    std::string invocation;
    for (int i = 1; i < argc; ++i) {
      if (i > 1) invocation.push_back('\x1f');
      invocation += argv[i];
    }
    log_info(std::string("corpkit ") + kVersion + ", invocation digest " +
             content_digest(invocation));

    if (dedup_cmd->parsed()) run_dedup(dedup_args);
    if (classify_cmd->parsed()) run_classify(classify_args);
    if (freq_cmd->parsed()) run_freq(freq_args);
    if (sim_cmd->parsed()) run_sim(sim_args, threads);
    if (extract_cmd->parsed()) run_extract(extract_args);
    if (aggregate_cmd->parsed()) aggregate(PipelineConfig::load(aggregate_config));
    if (eval_cmd->parsed()) run_eval_cmd(eval_args, threads);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const Error& e) {
    std::cerr << "corpkit: error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "corpkit: error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
