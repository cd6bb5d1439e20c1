#ifndef KNOT_SEALING_HPP
#define KNOT_SEALING_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "knot/hash.hpp"
#include "knot/protocol.hpp"

namespace knot {

using SymmetricKey = std::array<std::uint8_t, 32>;

/// One secret payload. Non-empty, under 2^32 bytes.
class Secret {
 public:
  explicit Secret(std::vector<std::uint8_t> payload);
  static Secret from_string(std::string_view text);

  const std::vector<std::uint8_t>& payload() const { return payload_; }
  bool operator==(const Secret& other) const = default;

 private:
  std::vector<std::uint8_t> payload_;
};

/// Ciphertext plus the plaintext commitment that travels with it. The
/// commitment is an unkeyed hash on purpose: the receiver must be able to
/// compare commitments across indices to spot a sender who shipped the
/// same secret everywhere, and after decryption it doubles as the
/// correctness check. The cost is that equal plaintexts are visible as
/// equal commitments.
struct SealedSecret {
  std::vector<std::uint8_t> ciphertext;  // payload XOR keystream
  Digest commitment;                     // H(tag || payload)
};

/// Wire payload carrying all n sealed secrets in index order. Sending
/// every index, not just the chosen ones, is what makes the transfer
/// oblivious.
struct MsgSecrets {
  std::vector<SealedSecret> items;
};

// 32-byte key from a group element. Hashes rather than truncates: group
// elements are not uniform byte strings. The tag is the 1-based secret
// index, so both parties derive the same key exactly when their elements
// and target index agree.
SymmetricKey derive_key(const Bigint& element, const SessionParams& session,
                        std::uint32_t index_tag);

Digest commitment_of(const Secret& secret);

// XOR with the hash-counter keystream block_i = H(key || be64(i)), plus
// the commitment. seal then unseal with the same key is the identity.
SealedSecret seal(const Secret& secret, const SymmetricKey& key);

// Decrypts and recomputes the commitment. nullopt means the commitment
// did not match: wrong key, tampered ciphertext, or a dishonest sender.
std::optional<Secret> unseal(const SealedSecret& sealed,
                             const SymmetricKey& key);

// True iff no two digests are byte-equal. A false result on honest
// hashes means at least two secrets are identical.
bool check_distinct(std::span<const Digest> commitments);
bool check_distinct(const MsgSecrets& msg);

}  // namespace knot

#endif
