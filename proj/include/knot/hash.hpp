#ifndef KNOT_HASH_HPP
#define KNOT_HASH_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string_view>

namespace knot {

using Digest = std::array<std::uint8_t, 32>;

// SHA-256, the suite 0x01 hash.
Digest sha256(std::span<const std::uint8_t> data);

class Sha256 {
 public:
  Sha256();
  ~Sha256();
  Sha256(const Sha256&) = delete;
  Sha256& operator=(const Sha256&) = delete;

  void update(std::span<const std::uint8_t> data);
  void update(std::string_view text);
  Digest finish();

 private:
  void* ctx_;
};

}  // namespace knot

#endif
