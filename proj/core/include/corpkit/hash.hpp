#pragma once

#include <cstdint>
#include <cstring>
#include <string_view>

namespace corpkit {

// MurmurHash64A. All hashed fingerprints in the toolkit (shingles, document
// ids, config digests) go through this one function so runs are comparable.
inline std::uint64_t murmur64(const void* key, std::size_t len,
                              std::uint64_t seed) {
  const std::uint64_t m = 0xc6a4a7935bd1e995ull;
  const int r = 47;
  std::uint64_t h = seed ^ (len * m);

  const unsigned char* data = static_cast<const unsigned char*>(key);
  const unsigned char* end = data + (len & ~std::size_t{7});
  while (data != end) {
    std::uint64_t k;
    std::memcpy(&k, data, 8);
    data += 8;
    k *= m;
    k ^= k >> r;
    k *= m;
    h ^= k;
    h *= m;
  }

  switch (len & 7) {
    case 7: h ^= std::uint64_t(data[6]) << 48; [[fallthrough]];
    case 6: h ^= std::uint64_t(data[5]) << 40; [[fallthrough]];
    case 5: h ^= std::uint64_t(data[4]) << 32; [[fallthrough]];
    case 4: h ^= std::uint64_t(data[3]) << 24; [[fallthrough]];
    case 3: h ^= std::uint64_t(data[2]) << 16; [[fallthrough]];
    case 2: h ^= std::uint64_t(data[1]) << 8; [[fallthrough]];
    case 1: h ^= std::uint64_t(data[0]); h *= m;
  }

  h ^= h >> r;
  h *= m;
  h ^= h >> r;
  return h;
}

inline std::uint64_t murmur64(std::string_view s, std::uint64_t seed) {
  return murmur64(s.data(), s.size(), seed);
}

}  // namespace corpkit
