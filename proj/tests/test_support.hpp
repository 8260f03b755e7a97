#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <random>
#include <string>
#include <vector>

#include <unistd.h>

#include "corpkit/document.hpp"

namespace testsup {

// Unique scratch directory under the system temp dir, removed on scope exit.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("corpkit-test-" + tag + "-" + std::to_string(::getpid()) + "-" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path file(const std::string& name) const {
    return path_ / name;
  }

 private:
  std::filesystem::path path_;
};

inline void write_text(const std::filesystem::path& path,
                       const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  out << content;
}

inline std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

// Uniform double in [0,1) from the top 53 bits; avoids the
// implementation-defined std::uniform_real_distribution.
inline double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::uint64_t uniform_below(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

// Vocabulary of distinct ASCII tokens.
inline std::vector<std::string> make_vocab(std::size_t size,
                                           const std::string& prefix) {
  std::vector<std::string> vocab;
  vocab.reserve(size);
  for (std::size_t i = 0; i < size; ++i)
    vocab.push_back(prefix + std::to_string(i));
  return vocab;
}

// Zipf-ish token sample: P(rank r) ∝ 1/(r+1)^s, drawn via a cumulative table
// so the sequence is fully determined by the seed.
inline std::vector<std::string> zipf_tokens(
    std::uint64_t count, const std::vector<std::string>& vocab, double s,
    std::uint64_t seed) {
  std::vector<double> cumulative(vocab.size());
  double total = 0;
  for (std::size_t r = 0; r < vocab.size(); ++r) {
    total += 1.0 / std::pow(static_cast<double>(r + 1), s);
    cumulative[r] = total;
  }
  std::mt19937_64 rng(seed);
  std::vector<std::string> tokens;
  tokens.reserve(count);
  for (std::uint64_t i = 0; i < count; ++i) {
    double u = uniform01(rng) * total;
    auto it = std::lower_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t r = static_cast<std::size_t>(it - cumulative.begin());
    if (r >= vocab.size()) r = vocab.size() - 1;
    tokens.push_back(vocab[r]);
  }
  return tokens;
}

inline std::string join_words(const std::vector<std::string>& words) {
  std::string out;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(' ');
    out += words[i];
  }
  return out;
}

inline corpkit::Document doc(std::string id, std::string text,
                             std::string source = "test") {
  corpkit::Document d;
  d.id = std::move(id);
  d.text = std::move(text);
  d.source = std::move(source);
  return d;
}

}  // namespace testsup
