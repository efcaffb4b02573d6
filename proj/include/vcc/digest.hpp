#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace vcc {

// MD5 as a 32-char lowercase hex string. Equality fingerprint only.
std::string md5_hex(std::string_view data);

// FNV-1a 64-bit. Fixed constants, byte-order independent; used wherever a
// stable cross-platform hash of a short string is needed.
constexpr std::uint64_t fnv1a64(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

}  // namespace vcc
