#include "corpkit/text.hpp"

#include <algorithm>
#include <array>

namespace corpkit {

namespace {

struct CodepointRange {
  std::uint32_t lo;
  std::uint32_t hi;
};

struct LowercasePair {
  std::uint32_t cp;
  std::uint32_t lower;
};

#include "unicode_tables.inc"

bool in_ranges(char32_t cp) {
  auto it = std::upper_bound(
      std::begin(kLetterDigitRanges), std::end(kLetterDigitRanges),
      static_cast<std::uint32_t>(cp),
      [](std::uint32_t v, const CodepointRange& r) { return v < r.lo; });
  if (it == std::begin(kLetterDigitRanges)) return false;
  --it;
  return cp >= it->lo && cp <= it->hi;
}

char32_t lower_in_pairs(char32_t cp) {
  auto it = std::lower_bound(
      std::begin(kLowercasePairs), std::end(kLowercasePairs),
      static_cast<std::uint32_t>(cp),
      [](const LowercasePair& p, std::uint32_t v) { return p.cp < v; });
  if (it != std::end(kLowercasePairs) && it->cp == cp) return it->lower;
  return cp;
}

// Dense tables for the Latin/Greek/Cyrillic region, which covers nearly all
// Serbo-Croatian text; anything above falls back to binary search.
constexpr std::size_t kSmallLimit = 0x600;

struct SmallTables {
  std::array<char32_t, kSmallLimit> lower;
  std::array<unsigned char, kSmallLimit> word;
  SmallTables() {
    for (std::size_t cp = 0; cp < kSmallLimit; ++cp) {
      word[cp] = in_ranges(static_cast<char32_t>(cp));
      lower[cp] = lower_in_pairs(static_cast<char32_t>(cp));
    }
  }
};

const SmallTables& small_tables() {
  static const SmallTables tables;
  return tables;
}

}  // namespace

void utf8_encode(char32_t cp, std::string& out) {
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

bool utf8_valid(std::string_view s) {
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
      ++i;
      continue;
    }
    std::size_t before = i;
    if (utf8_decode(s, i) == 0xFFFD) return false;
    (void)before;
  }
  return true;
}

bool is_word_codepoint(char32_t cp) {
  if (cp < kSmallLimit) return small_tables().word[cp];
  return in_ranges(cp);
}

char32_t to_lower_codepoint(char32_t cp) {
  if (cp < kSmallLimit) return small_tables().lower[cp];
  return lower_in_pairs(cp);
}

std::string to_lower(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    const auto b = static_cast<unsigned char>(s[i]);
    if (b < 0x80) {
      out.push_back(b >= 'A' && b <= 'Z' ? static_cast<char>(b + 32)
                                         : static_cast<char>(b));
      ++i;
      continue;
    }
    utf8_encode(to_lower_codepoint(utf8_decode(s, i)), out);
  }
  return out;
}

void for_each_token(std::string_view text,
                    const std::function<void(const std::string&)>& fn) {
  const SmallTables& tables = small_tables();
  std::string token;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto b = static_cast<unsigned char>(text[i]);
    char32_t cp;
    if (b < 0x80) {
      cp = b;
      ++i;
    } else {
      cp = utf8_decode(text, i);
    }
    bool word = cp < kSmallLimit ? tables.word[cp] : in_ranges(cp);
    if (word) {
      char32_t lo = cp < kSmallLimit ? tables.lower[cp] : lower_in_pairs(cp);
      if (lo < 0x80) {
        token.push_back(static_cast<char>(lo));
      } else {
        utf8_encode(lo, token);
      }
    } else if (!token.empty()) {
      fn(token);
      token.clear();
    }
  }
  if (!token.empty()) fn(token);
}

namespace detail {

ScanTables scan_tables() {
  const SmallTables& t = small_tables();
  return ScanTables{t.lower.data(), t.word.data()};
}

bool is_word_codepoint_slow(char32_t cp) { return in_ranges(cp); }

char32_t to_lower_codepoint_slow(char32_t cp) { return lower_in_pairs(cp); }

}  // namespace detail

void for_each_token_hash(std::string_view text,
                         const std::function<void(std::uint64_t)>& fn) {
  scan_token_hashes(text, [&](std::uint64_t h) { fn(h); });
}

TokenStream tokenize(std::string_view text) {
  TokenStream out;
  for_each_token(text, [&](const std::string& t) { out.push_back(t); });
  return out;
}

std::uint64_t count_tokens(std::string_view text) {
  const SmallTables& tables = small_tables();
  std::uint64_t count = 0;
  bool in_token = false;
  std::size_t i = 0;
  const std::size_t n = text.size();
  while (i < n) {
    const auto b = static_cast<unsigned char>(text[i]);
    char32_t cp;
    if (b < 0x80) {
      cp = b;
      ++i;
    } else {
      cp = utf8_decode(text, i);
    }
    bool word = cp < kSmallLimit ? tables.word[cp] : in_ranges(cp);
    if (word && !in_token) ++count;
    in_token = word;
  }
  return count;
}

std::string join_tokens(const TokenStream& tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace corpkit
