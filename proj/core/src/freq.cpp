#include "corpkit/freq.hpp"

#include <algorithm>
#include <fstream>
#include <random>

#include "corpkit/error.hpp"
#include "corpkit/io_util.hpp"

namespace corpkit {

void ExcerptSpec::validate() const {
  if (size_words < 1) throw Error("excerpt: size_words must be >= 1");
}

std::string_view to_string(ExcerptSpec::Strategy strategy) {
  return strategy == ExcerptSpec::Strategy::head ? "head" : "shuffled";
}

std::optional<ExcerptSpec::Strategy> parse_strategy(std::string_view name) {
  if (name == "head") return ExcerptSpec::Strategy::head;
  if (name == "shuffled") return ExcerptSpec::Strategy::shuffled;
  return std::nullopt;
}

TokenStream sample_excerpt(DocumentSource& docs, const ExcerptSpec& spec) {
  spec.validate();
  TokenStream out;

  auto take = [&](const Document& doc) {
    for_each_token(doc.text, [&](const std::string& token) {
      if (out.size() < spec.size_words) out.push_back(token);
    });
    return out.size() >= spec.size_words;
  };

  if (spec.strategy == ExcerptSpec::Strategy::head) {
    while (auto doc = docs.next()) {
      if (take(*doc)) break;
    }
  } else {
    std::vector<Document> all = drain(docs);
    // Hand-rolled Fisher-Yates: std::shuffle's draw sequence is
    // implementation-defined, and excerpts must be reproducible everywhere.
    std::mt19937_64 rng(spec.seed);
    for (std::size_t i = all.size(); i > 1; --i) {
      std::size_t j = static_cast<std::size_t>(rng() % i);
      std::swap(all[i - 1], all[j]);
    }
    for (const Document& doc : all) {
      if (take(doc)) break;
    }
  }

  if (out.size() < spec.size_words && !spec.allow_short)
    throw Error("corpus has " + std::to_string(out.size()) + " < " +
                std::to_string(spec.size_words) + " tokens");
  return out;
}

FrequencyProfile frequency_table(const TokenStream& tokens,
                                 std::string corpus_name) {
  FrequencyProfile profile;
  profile.corpus_name = std::move(corpus_name);
  profile.total_tokens = tokens.size();
  profile.counts.reserve(tokens.size() / 4 + 16);
  for (const std::string& token : tokens) ++profile.counts[token];
  return profile;
}

namespace {

std::vector<const std::pair<const std::string, std::uint64_t>*> ranked(
    const FrequencyProfile& profile) {
  std::vector<const std::pair<const std::string, std::uint64_t>*> items;
  items.reserve(profile.counts.size());
  for (const auto& kv : profile.counts) items.push_back(&kv);
  std::sort(items.begin(), items.end(), [](const auto* a, const auto* b) {
    if (a->second != b->second) return a->second > b->second;
    return a->first < b->first;
  });
  return items;
}

}  // namespace

std::vector<std::string> top_k(const FrequencyProfile& profile,
                               std::size_t k) {
  if (k < 1) throw Error("top_k: k must be >= 1");
  auto items = ranked(profile);
  if (items.size() > k) items.resize(k);
  std::vector<std::string> words;
  words.reserve(items.size());
  for (const auto* kv : items) words.push_back(kv->first);
  return words;
}

void build_top(FrequencyProfile& profile, std::size_t k) {
  if (k < 1) throw Error("top_k: k must be >= 1");
  auto items = ranked(profile);
  if (items.size() > k) items.resize(k);
  profile.top.clear();
  profile.top.reserve(items.size());
  for (const auto* kv : items) {
    double pm = static_cast<double>(kv->second) * 1'000'000.0 /
                static_cast<double>(profile.total_tokens);
    profile.top.emplace_back(kv->first, pm);
  }
}

double per_million(const FrequencyProfile& profile, std::string_view word) {
  if (profile.total_tokens == 0)
    throw Error("per_million: profile '" + profile.corpus_name +
                "' has zero tokens");
  auto it = profile.counts.find(std::string(word));
  if (it == profile.counts.end()) return 0.0;
  return static_cast<double>(it->second) * 1'000'000.0 /
         static_cast<double>(profile.total_tokens);
}

void write_profile_tsv(const FrequencyProfile& profile, std::ostream& out) {
  out << "rank\tword\tcount\tper_million\n";
  for (std::size_t i = 0; i < profile.top.size(); ++i) {
    const auto& [word, pm] = profile.top[i];
    auto it = profile.counts.find(word);
    std::uint64_t count = it == profile.counts.end() ? 0 : it->second;
    out << (i + 1) << '\t' << word << '\t' << count << '\t'
        << format_double(pm) << '\n';
  }
}

TopProfile to_top_profile(const FrequencyProfile& profile) {
  return TopProfile{profile.corpus_name, profile.top};
}

TopProfile read_profile_tsv(const std::filesystem::path& path,
                            std::string corpus_name) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open profile: " + path.string());
  TopProfile profile;
  profile.corpus_name = std::move(corpus_name);
  std::string line;
  std::uint64_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line_no == 1) {
      if (trim(line) != "rank\tword\tcount\tper_million")
        throw Error(path.string() + ": not a profile TSV (unexpected header)");
      continue;
    }
    if (trim(line).empty()) continue;
    std::vector<std::string_view> cols;
    std::string_view sv = line;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= sv.size(); ++i) {
      if (i == sv.size() || sv[i] == '\t') {
        cols.push_back(sv.substr(start, i - start));
        start = i + 1;
      }
    }
    if (cols.size() != 4)
      throw Error(path.string() + ": line " + std::to_string(line_no) +
                  ": expected 4 tab-separated columns");
    try {
      std::uint64_t rank = std::stoull(std::string(cols[0]));
      if (rank != profile.top.size() + 1)
        throw Error(path.string() + ": line " + std::to_string(line_no) +
                    ": rank out of order");
      double pm = std::stod(std::string(cols[3]));
      profile.top.emplace_back(std::string(cols[1]), pm);
    } catch (const Error&) {
      throw;
    } catch (const std::exception&) {
      throw Error(path.string() + ": line " + std::to_string(line_no) +
                  ": malformed numeric field");
    }
  }
  return profile;
}

}  // namespace corpkit
