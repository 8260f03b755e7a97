#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace corpkit {

// Tokens are maximal runs of Unicode letters and decimal digits, lowercased.
// No transliteration is performed: Cyrillic and Latin text keep their
// scripts, so "Уопште" and "uopšte" are distinct tokens.
using TokenStream = std::vector<std::string>;

// --- UTF-8 ------------------------------------------------------------

// Decodes the codepoint starting at byte i and advances i past it. Invalid
// sequences (including overlong forms and surrogates) yield U+FFFD and
// advance one byte, so malformed bytes act as token separators.
inline char32_t utf8_decode(std::string_view s, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(s[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  auto cont = [&](std::size_t k) {
    return k < s.size() && (static_cast<unsigned char>(s[k]) & 0xC0) == 0x80;
  };
  if ((b0 & 0xE0) == 0xC0 && cont(i + 1)) {
    char32_t cp = (char32_t(b0 & 0x1F) << 6) |
                  char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F);
    i += 2;
    return cp < 0x80 ? 0xFFFD : cp;
  }
  if ((b0 & 0xF0) == 0xE0 && cont(i + 1) && cont(i + 2)) {
    char32_t cp = (char32_t(b0 & 0x0F) << 12) |
                  (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 6) |
                  char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F);
    i += 3;
    if (cp < 0x800 || (cp >= 0xD800 && cp <= 0xDFFF)) return 0xFFFD;
    return cp;
  }
  if ((b0 & 0xF8) == 0xF0 && cont(i + 1) && cont(i + 2) && cont(i + 3)) {
    char32_t cp =
        (char32_t(b0 & 0x07) << 18) |
        (char32_t(static_cast<unsigned char>(s[i + 1]) & 0x3F) << 12) |
        (char32_t(static_cast<unsigned char>(s[i + 2]) & 0x3F) << 6) |
        char32_t(static_cast<unsigned char>(s[i + 3]) & 0x3F);
    i += 4;
    if (cp < 0x10000 || cp > 0x10FFFF) return 0xFFFD;
    return cp;
  }
  ++i;
  return 0xFFFD;
}

void utf8_encode(char32_t cp, std::string& out);

// Strict validation: rejects overlong encodings, surrogates and truncated
// sequences.
bool utf8_valid(std::string_view s);

// --- codepoint classification ---------------------------------------------

// True for general categories L* and Nd (letters and decimal digits).
bool is_word_codepoint(char32_t cp);

// Simple one-to-one lowercase mapping; codepoints without a single-codepoint
// lowercase form are returned unchanged.
char32_t to_lower_codepoint(char32_t cp);

// Lowercases every codepoint of a UTF-8 string.
std::string to_lower(std::string_view s);

// --- tokenization ----------------------------------------------------------

// Calls fn once per token, in order. The referenced string is a scratch
// buffer reused between calls; copy it if it must outlive the call.
void for_each_token(std::string_view text,
                    const std::function<void(const std::string&)>& fn);

// Streaming variant for hashed consumers: one 64-bit hash per token, no
// token strings built. The hash is over the token's lowercased UTF-8 bytes
// and is stable across runs; equal tokens always hash equal.
void for_each_token_hash(std::string_view text,
                         const std::function<void(std::uint64_t)>& fn);

namespace detail {

// Dense classification tables for the Latin/Greek/Cyrillic region.
inline constexpr std::size_t kScanTableLimit = 0x600;
struct ScanTables {
  const char32_t* lower;
  const unsigned char* word;
};
ScanTables scan_tables();
bool is_word_codepoint_slow(char32_t cp);
char32_t to_lower_codepoint_slow(char32_t cp);

}  // namespace detail

// Inline-able core of for_each_token_hash for hot loops; fn(token_hash) is
// called directly, with no type erasure.
template <class Fn>
inline void scan_token_hashes(std::string_view text, Fn&& fn) {
  const detail::ScanTables tables = detail::scan_tables();
  constexpr std::uint64_t kFnvOffset = 0xcbf29ce484222325ull;
  constexpr std::uint64_t kFnvPrime = 0x100000001b3ull;
  std::uint64_t hash = kFnvOffset;
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
    bool word = cp < detail::kScanTableLimit ? tables.word[cp] != 0
                                             : detail::is_word_codepoint_slow(cp);
    if (word) {
      char32_t lo = cp < detail::kScanTableLimit
                        ? tables.lower[cp]
                        : detail::to_lower_codepoint_slow(cp);
      if (lo < 0x80) {
        hash = (hash ^ static_cast<std::uint64_t>(lo)) * kFnvPrime;
      } else if (lo < 0x800) {
        hash = (hash ^ (0xC0u | (lo >> 6))) * kFnvPrime;
        hash = (hash ^ (0x80u | (lo & 0x3F))) * kFnvPrime;
      } else if (lo < 0x10000) {
        hash = (hash ^ (0xE0u | (lo >> 12))) * kFnvPrime;
        hash = (hash ^ (0x80u | ((lo >> 6) & 0x3F))) * kFnvPrime;
        hash = (hash ^ (0x80u | (lo & 0x3F))) * kFnvPrime;
      } else {
        hash = (hash ^ (0xF0u | (lo >> 18))) * kFnvPrime;
        hash = (hash ^ (0x80u | ((lo >> 12) & 0x3F))) * kFnvPrime;
        hash = (hash ^ (0x80u | ((lo >> 6) & 0x3F))) * kFnvPrime;
        hash = (hash ^ (0x80u | (lo & 0x3F))) * kFnvPrime;
      }
      in_token = true;
    } else if (in_token) {
      std::uint64_t h = hash;
      h ^= h >> 33;
      h *= 0xff51afd7ed558ccdull;
      h ^= h >> 33;
      h *= 0xc4ceb9fe1a85ec53ull;
      h ^= h >> 33;
      fn(h);
      hash = kFnvOffset;
      in_token = false;
    }
  }
  if (in_token) {
    std::uint64_t h = hash;
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    h *= 0xc4ceb9fe1a85ec53ull;
    h ^= h >> 33;
    fn(h);
  }
}

TokenStream tokenize(std::string_view text);

// Token count without materializing the tokens.
std::uint64_t count_tokens(std::string_view text);

// Joins with single spaces; tokenize(join_tokens(t)) == t for any token
// stream produced by tokenize.
std::string join_tokens(const TokenStream& tokens);

}  // namespace corpkit
