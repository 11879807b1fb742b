#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>

namespace toxaug {

// Minimal SHA-256 (FIPS 180-4), used to derive content digests for the score
// cache.
class Sha256 {
  public:
    Sha256();

    void update(const void* data, std::size_t len);
    std::array<std::uint8_t, 32> digest();

  private:
    void process_block(const std::uint8_t* block);

    std::array<std::uint32_t, 8> state_;
    std::array<std::uint8_t, 64> buffer_;
    std::size_t buffered_ = 0;
    std::uint64_t total_bytes_ = 0;
};

// Lowercase hex digest of text.
std::string sha256_hex(std::string_view text);

} // namespace toxaug
