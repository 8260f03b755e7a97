#include "corpkit/pipeline.hpp"

#include <algorithm>
#include <memory>
#include <unordered_set>

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"
#include "corpkit/version.hpp"

namespace corpkit {

namespace {

struct IniEntry {
  std::string key;
  std::string value;
  std::uint64_t line;
};

struct IniSection {
  std::string name;
  std::vector<IniEntry> entries;
  std::uint64_t line;
};

// Plain [section] / key = value format; '#' and ';' start comments.
// Repeated sections are allowed and kept in file order.
std::vector<IniSection> parse_ini(std::string_view content) {
  std::vector<IniSection> sections;
  std::uint64_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= content.size()) {
    std::size_t eol = content.find('\n', pos);
    std::string_view line = content.substr(
        pos, eol == std::string_view::npos ? content.size() - pos : eol - pos);
    pos = eol == std::string_view::npos ? content.size() + 1 : eol + 1;
    ++line_no;

    auto comment = line.find_first_of("#;");
    if (comment != std::string_view::npos) line = line.substr(0, comment);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']')
        throw Error("config line " + std::to_string(line_no) +
                    ": malformed section header");
      sections.push_back(
          IniSection{std::string(trim(line.substr(1, line.size() - 2))),
                     {},
                     line_no});
      continue;
    }
    auto eq = line.find('=');
    if (eq == std::string_view::npos)
      throw Error("config line " + std::to_string(line_no) +
                  ": expected key = value");
    if (sections.empty())
      throw Error("config line " + std::to_string(line_no) +
                  ": key outside any [section]");
    sections.back().entries.push_back(
        IniEntry{std::string(trim(line.substr(0, eq))),
                 std::string(trim(line.substr(eq + 1))), line_no});
  }
  return sections;
}

bool parse_bool_value(const IniEntry& e) {
  if (e.value == "true" || e.value == "yes" || e.value == "1") return true;
  if (e.value == "false" || e.value == "no" || e.value == "0") return false;
  throw Error("config line " + std::to_string(e.line) + ": '" + e.key +
              "' expects a boolean");
}

double parse_double_value(const IniEntry& e) {
  try {
    std::size_t used = 0;
    double v = std::stod(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error("config line " + std::to_string(e.line) + ": '" + e.key +
                "' expects a number");
  }
}

long long parse_int_value(const IniEntry& e) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(e.value, &used);
    if (used != e.value.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    throw Error("config line " + std::to_string(e.line) + ": '" + e.key +
                "' expects an integer");
  }
}

std::filesystem::path resolve(const std::filesystem::path& base,
                              const std::string& value) {
  std::filesystem::path p(value);
  if (p.is_absolute() || base.empty()) return p;
  return base / p;
}

[[noreturn]] void unknown_key(const IniSection& section, const IniEntry& e) {
  throw Error("config line " + std::to_string(e.line) + ": unknown key '" +
              e.key + "' in [" + section.name + "]");
}

}  // namespace

PipelineConfig PipelineConfig::parse(std::string_view content,
                                     const std::filesystem::path& base_dir) {
  PipelineConfig config;

  for (const IniSection& section : parse_ini(content)) {
    if (section.name == "dedup") {
      for (const IniEntry& e : section.entries) {
        if (e.key == "ngram")
          config.dedup.ngram = static_cast<int>(parse_int_value(e));
        else if (e.key == "threshold")
          config.dedup.threshold = parse_double_value(e);
        else if (e.key == "hash_bits")
          config.dedup.hash_bits = static_cast<int>(parse_int_value(e));
        else
          unknown_key(section, e);
      }
    } else if (section.name == "classifier") {
      for (const IniEntry& e : section.entries) {
        if (e.key == "je_ratio_threshold")
          config.classifier.je_ratio_threshold = parse_double_value(e);
        else if (e.key == "je_vote_weight")
          config.classifier.je_vote_weight =
              static_cast<int>(parse_int_value(e));
        else if (e.key == "tie_break") {
          auto tb = parse_tie_break(e.value);
          if (!tb)
            throw Error("config line " + std::to_string(e.line) +
                        ": unknown tie_break '" + e.value + "'");
          config.classifier.tie_break = *tb;
        } else if (e.key == "markers") {
          config.markers_path = resolve(base_dir, e.value);
        } else {
          unknown_key(section, e);
        }
      }
    } else if (section.name == "output") {
      for (const IniEntry& e : section.entries) {
        if (e.key == "corpus")
          config.output_corpus = resolve(base_dir, e.value);
        else if (e.key == "report")
          config.output_report = resolve(base_dir, e.value);
        else
          unknown_key(section, e);
      }
    } else if (section.name == "options") {
      for (const IniEntry& e : section.entries) {
        if (e.key == "skip_malformed")
          config.skip_malformed = parse_bool_value(e);
        else if (e.key == "allow_empty")
          config.allow_empty_text = parse_bool_value(e);
        else
          unknown_key(section, e);
      }
    } else if (section.name == "source") {
      SourceSpec source;
      for (const IniEntry& e : section.entries) {
        if (e.key == "name") {
          source.name = e.value;
        } else if (e.key == "path") {
          source.path = resolve(base_dir, e.value);
        } else if (e.key == "format") {
          auto fmt = parse_corpus_format(e.value);
          if (!fmt)
            throw Error("config line " + std::to_string(e.line) +
                        ": unknown format '" + e.value + "'");
          source.format = *fmt;
        } else if (e.key == "lang") {
          auto lang = parse_lang(e.value);
          if (!lang)
            throw Error("config line " + std::to_string(e.line) +
                        ": unknown lang '" + e.value + "'");
          source.lang = *lang;
        } else if (e.key == "split") {
          source.split = parse_bool_value(e);
        } else {
          unknown_key(section, e);
        }
      }
      if (source.name.empty())
        throw Error("config line " + std::to_string(section.line) +
                    ": [source] requires a name");
      if (source.path.empty())
        throw Error("config line " + std::to_string(section.line) +
                    ": [source] '" + source.name + "' requires a path");
      config.sources.push_back(std::move(source));
    } else {
      throw Error("config line " + std::to_string(section.line) +
                  ": unknown section [" + section.name + "]");
    }
  }
  config.validate();
  config.digest = content_digest(config.describe());
  return config;
}

std::string PipelineConfig::describe() const {
  std::string out;
  out += "[dedup]\nngram = " + std::to_string(dedup.ngram) +
         "\nthreshold = " + format_double(dedup.threshold) +
         "\nhash_bits = " + std::to_string(dedup.hash_bits) + "\n";
  out += "[classifier]\nje_ratio_threshold = " +
         format_double(classifier.je_ratio_threshold) +
         "\nje_vote_weight = " + std::to_string(classifier.je_vote_weight) +
         "\ntie_break = " + std::string(to_string(classifier.tie_break)) +
         "\n";
  if (!markers_path.empty()) out += "markers = " + markers_path.string() + "\n";
  out += "[output]\ncorpus = " + output_corpus.string() +
         "\nreport = " + output_report.string() + "\n";
  out += "[options]\nskip_malformed = " +
         std::string(skip_malformed ? "true" : "false") + "\nallow_empty = " +
         std::string(allow_empty_text ? "true" : "false") + "\n";
  for (const SourceSpec& s : sources) {
    out += "[source]\nname = " + s.name + "\npath = " + s.path.string() +
           "\nformat = " + std::string(to_string(s.format)) +
           "\nlang = " + std::string(to_string(s.lang)) + "\nsplit = " +
           std::string(s.split ? "true" : "false") + "\n";
  }
  return out;
}

PipelineConfig PipelineConfig::load(const std::filesystem::path& path) {
  return parse(read_file(path), path.parent_path());
}

void PipelineConfig::validate() const {
  if (sources.empty()) throw Error("config: no [source] sections");
  std::unordered_set<std::string> names;
  for (const SourceSpec& s : sources) {
    if (!names.insert(s.name).second)
      throw Error("config: duplicate source name '" + s.name + "'");
  }
  if (output_corpus.empty()) throw Error("config: [output] corpus not set");
  if (output_report.empty()) throw Error("config: [output] report not set");
  dedup.validate();
  classifier.validate();
}

namespace {

// Spill file for the non-Serbian half of a split source, removed on scope
// exit.
class SpillFile {
 public:
  explicit SpillFile(const std::filesystem::path& near) {
    path_ = near;
    path_ += ".split-hr.tmp";
    out_.open(path_, std::ios::binary | std::ios::trunc);
    if (!out_) throw Error("cannot write spill file: " + path_.string());
  }
  ~SpillFile() {
    out_.close();
    std::error_code ec;
    std::filesystem::remove(path_, ec);
  }
  std::ofstream& stream() { return out_; }
  void finish_writing() {
    out_.flush();
    if (!out_) throw Error("write failed on spill file: " + path_.string());
    out_.close();
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
  std::ofstream out_;
};

}  // namespace

AggregateResult aggregate(const PipelineConfig& config) {
  config.validate();
  log_info(std::string("corpkit ") + kVersion + ", config digest " +
           (config.digest.empty() ? content_digest(config.describe())
                                  : config.digest));
  {
    std::string order = "source order:";
    for (std::size_t i = 0; i < config.sources.size(); ++i)
      order += (i ? ", " : " ") + config.sources[i].name;
    log_info(order);
  }

  // Fail fast on unreadable inputs before touching any output.
  for (const SourceSpec& s : config.sources) {
    std::error_code ec;
    if (!std::filesystem::exists(s.path, ec))
      throw Error("source '" + s.name + "': path does not exist: " +
                  s.path.string());
  }
  MarkerLexicon lexicon = config.markers_path.empty()
                              ? MarkerLexicon::defaults()
                              : MarkerLexicon::from_tsv(config.markers_path);

  const bool prefix_ids = config.sources.size() > 1;
  Deduplicator dedup(config.dedup);
  AtomicFile corpus_out(config.output_corpus);
  JsonlWriter writer(corpus_out.stream());

  auto process = [&](DocumentSource& docs, const std::string& row_name) {
    while (auto doc = docs.next()) {
      doc->source = row_name;
      if (prefix_ids) doc->id = row_name + "/" + doc->id;
      if (dedup.offer(*doc)) writer.write(*doc);
    }
    if (docs.skipped() > 0)
      log_warn("source '" + row_name + "': skipped " +
               std::to_string(docs.skipped()) + " malformed records");
  };

  for (const SourceSpec& s : config.sources) {
    LoaderOptions options;
    options.default_source = s.name;
    options.default_lang = s.lang;
    options.skip_malformed = config.skip_malformed;
    options.allow_empty_text = config.allow_empty_text;
    options.override_source = true;

    if (!s.split) {
      dedup.touch(s.name);
      auto docs = open_corpus(s.path, s.format, options);
      process(*docs, s.name);
      continue;
    }

    // Split source: the Serbian half streams straight into the dedup, the
    // non-Serbian half spills to a temp file so its report row comes right
    // after, matching the two-row layout of split corpora.
    const std::string sr_name = s.name + "-sr";
    const std::string hr_name = s.name + "-hr";
    dedup.touch(sr_name);
    dedup.touch(hr_name);
    SpillFile spill(config.output_corpus);
    {
      JsonlWriter spill_writer(spill.stream());
      auto docs = open_corpus(s.path, s.format, options);
      SplitCounts counts = split_corpus(
          *docs, lexicon, config.classifier,
          [&](const Document& doc, const VariantVerdict&) {
            Document copy = doc;
            copy.source = sr_name;
            if (prefix_ids) copy.id = s.name + "/" + copy.id;
            if (dedup.offer(copy)) writer.write(copy);
          },
          [&](const Document& doc, const VariantVerdict&) {
            spill_writer.write(doc);
          });
      spill.finish_writing();
      if (docs->skipped() > 0)
        log_warn("source '" + s.name + "': skipped " +
                 std::to_string(docs->skipped()) + " malformed records");
      log_info("split '" + s.name + "': " + std::to_string(counts.sr_docs) +
               " sr docs, " + std::to_string(counts.hr_docs) + " hr docs");
    }
    LoaderOptions spill_options = options;
    spill_options.default_source = hr_name;
    spill_options.allow_empty_text = true;  // already validated on load
    auto hr_docs =
        open_corpus(spill.path(), CorpusFormat::jsonl, spill_options);
    while (auto doc = hr_docs->next()) {
      doc->source = hr_name;
      if (prefix_ids) doc->id = s.name + "/" + doc->id;
      if (dedup.offer(*doc)) writer.write(*doc);
    }
  }

  AggregateResult result;
  result.report = dedup.report();

  AtomicFile report_out(config.output_report);
  write_report_csv(result.report, report_out.stream());
  corpus_out.commit();
  report_out.commit();
  log_info("kept " + std::to_string(result.report.docs_kept) + " documents, " +
           "dropped " + std::to_string(result.report.docs_dropped));
  return result;
}

namespace {

[[noreturn]] void stage_error(const char* stage, const std::string& what) {
  throw Error(std::string("[") + stage + "] " + what);
}

}  // namespace

EvalResult run_eval(const std::vector<EvalInput>& corpora,
                    const EvalParams& params, bool skip_malformed,
                    bool allow_empty_text) {
  if (corpora.size() < 2) throw Error("need at least 2 corpora");
  {
    std::unordered_set<std::string> names;
    for (const EvalInput& input : corpora) {
      if (!names.insert(input.name).second)
        throw Error("duplicate corpus name '" + input.name + "'");
    }
  }

  std::vector<TopProfile> profiles;
  std::vector<FrequencyProfile> full_profiles;
  profiles.reserve(corpora.size());
  for (const EvalInput& input : corpora) {
    try {
      LoaderOptions options;
      options.default_source = input.name;
      options.skip_malformed = skip_malformed;
      options.allow_empty_text = allow_empty_text;
      auto docs = open_corpus(input.path, input.format, options);
      TokenStream excerpt = sample_excerpt(*docs, params.excerpt);
      if (docs->skipped() > 0)
        log_warn("corpus '" + input.name + "': skipped " +
                 std::to_string(docs->skipped()) + " malformed records");
      FrequencyProfile profile =
          frequency_table(excerpt, input.name);
      build_top(profile, params.top_k);
      profiles.push_back(to_top_profile(profile));
      full_profiles.push_back(std::move(profile));
    } catch (const Error& e) {
      stage_error("freq", "corpus '" + input.name + "': " + e.what());
    }
  }

  EvalResult result = run_eval_profiles(profiles, params);

  if (!params.profiles_out_dir.empty()) {
    for (const FrequencyProfile& profile : full_profiles) {
      AtomicFile out(params.profiles_out_dir / (profile.corpus_name + ".tsv"));
      write_profile_tsv(profile, out.stream());
      out.commit();
    }
  }
  return result;
}

EvalResult run_eval_profiles(const std::vector<TopProfile>& profiles,
                             const EvalParams& params) {
  if (profiles.size() < 2) throw Error("need at least 2 corpora");
  {
    std::unordered_set<std::string> names;
    for (const TopProfile& p : profiles) {
      if (!names.insert(p.corpus_name).second)
        throw Error("duplicate corpus name '" + p.corpus_name + "'");
    }
  }

  EvalResult result;
  try {
    std::vector<std::vector<std::string>> top_lists;
    top_lists.reserve(profiles.size());
    for (const TopProfile& p : profiles) {
      std::vector<std::string> words;
      words.reserve(p.top.size());
      std::size_t limit = std::min(p.top.size(), params.top_k);
      for (std::size_t i = 0; i < limit; ++i) words.push_back(p.top[i].first);
      top_lists.push_back(std::move(words));
    }
    FeatureSet features = feature_union(top_lists);
    log_info("feature set: " + std::to_string(features.size()) + " words");

    std::vector<ProfileVector> vectors;
    vectors.reserve(profiles.size());
    for (const TopProfile& p : profiles) {
      TopProfile limited = p;
      if (limited.top.size() > params.top_k)
        limited.top.resize(params.top_k);
      vectors.push_back(profile_vector(limited, features));
    }
    result.matrix = similarity_matrix(vectors, params.power, params.threads);
    result.ranking = uniqueness_ranking(result.matrix);
  } catch (const Error& e) {
    stage_error("sim", e.what());
  }

  // Stage every requested artifact before renaming any into place.
  std::vector<std::unique_ptr<AtomicFile>> staged;
  if (!params.matrix_out.empty()) {
    staged.push_back(std::make_unique<AtomicFile>(params.matrix_out));
    write_matrix_csv(result.matrix, staged.back()->stream());
  }
  if (!params.ranking_out.empty()) {
    staged.push_back(std::make_unique<AtomicFile>(params.ranking_out));
    write_ranking_csv(result.matrix, staged.back()->stream());
  }
  if (!params.graph_out.empty()) {
    staged.push_back(std::make_unique<AtomicFile>(params.graph_out));
    export_graph(result.matrix, staged.back()->stream());
  }
  for (auto& file : staged) file->commit();
  return result;
}

}  // namespace corpkit
