#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace domainsmith {

// Incremental FNV-1a (64-bit). Manifest checksums only; not cryptographic.
class Fnv1a64 {
 public:
  Fnv1a64& update(std::string_view bytes) {
    for (unsigned char c : bytes) {
      state_ ^= c;
      state_ *= 0x100000001B3ULL;
    }
    return *this;
  }
  Fnv1a64& update_byte(unsigned char c) {
    state_ ^= c;
    state_ *= 0x100000001B3ULL;
    return *this;
  }
  std::uint64_t value() const { return state_; }
  std::string hex() const;

 private:
  std::uint64_t state_ = 0xCBF29CE484222325ULL;
};

std::string digest_hex(std::string_view bytes);

// Digest of a file's contents, formatted as "fnv1a64:<hex>".
std::string digest_file(const std::string& path);

}  // namespace domainsmith
