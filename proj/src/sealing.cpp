#include "knot/sealing.hpp"

#include <set>
#include <utility>

#include "knot/errors.hpp"

namespace knot {

namespace {

constexpr std::string_view kKeyTag = "knot.key.v1";
constexpr std::string_view kCommitTag = "knot.commit.v1";

constexpr std::uint64_t kMaxPayload = (1ull << 32) - 1;

void update_be32(Sha256& h, std::uint32_t value) {
  std::uint8_t buf[4] = {static_cast<std::uint8_t>(value >> 24),
                         static_cast<std::uint8_t>(value >> 16),
                         static_cast<std::uint8_t>(value >> 8),
                         static_cast<std::uint8_t>(value)};
  h.update(std::span<const std::uint8_t>(buf, 4));
}

void update_prefixed(Sha256& h, const std::vector<std::uint8_t>& bytes) {
  update_be32(h, static_cast<std::uint32_t>(bytes.size()));
  h.update(bytes);
}

Digest keystream_block(const SymmetricKey& key, std::uint64_t counter) {
  Sha256 h;
  h.update(std::span<const std::uint8_t>(key.data(), key.size()));
  std::uint8_t buf[8];
  for (int i = 7; i >= 0; --i) {
    buf[i] = static_cast<std::uint8_t>(counter & 0xFF);
    counter >>= 8;
  }
  h.update(std::span<const std::uint8_t>(buf, 8));
  return h.finish();
}

std::vector<std::uint8_t> xor_keystream(std::span<const std::uint8_t> data,
                                        const SymmetricKey& key) {
  std::vector<std::uint8_t> out(data.size());
  std::uint64_t counter = 0;
  for (std::size_t offset = 0; offset < data.size(); offset += 32) {
    const Digest block = keystream_block(key, counter++);
    const std::size_t take = std::min<std::size_t>(32, data.size() - offset);
    for (std::size_t i = 0; i < take; ++i) {
      out[offset + i] = data[offset + i] ^ block[i];
    }
  }
  return out;
}

}  // namespace

Secret::Secret(std::vector<std::uint8_t> payload)
    : payload_(std::move(payload)) {
  if (payload_.empty()) {
    throw Error(Errc::param, "secret payload must be non-empty");
  }
  if (payload_.size() > kMaxPayload) {
    throw Error(Errc::param, "secret payload too large");
  }
}

Secret Secret::from_string(std::string_view text) {
  return Secret(std::vector<std::uint8_t>(text.begin(), text.end()));
}

SymmetricKey derive_key(const Bigint& element, const SessionParams& session,
                        std::uint32_t index_tag) {
  if (element < 1 || element >= session.group.p) {
    throw Error(Errc::param, "key element outside [1, p-1]");
  }
  Sha256 h;
  h.update(kKeyTag);
  update_prefixed(h, to_bytes_be(session.group.p));
  update_prefixed(h, to_bytes_be(element));
  update_be32(h, index_tag);
  return h.finish();
}

Digest commitment_of(const Secret& secret) {
  Sha256 h;
  h.update(kCommitTag);
  h.update(secret.payload());
  return h.finish();
}

SealedSecret seal(const Secret& secret, const SymmetricKey& key) {
  return SealedSecret{xor_keystream(secret.payload(), key),
                      commitment_of(secret)};
}

std::optional<Secret> unseal(const SealedSecret& sealed,
                             const SymmetricKey& key) {
  if (sealed.ciphertext.empty()) {
    return std::nullopt;
  }
  Secret candidate(xor_keystream(sealed.ciphertext, key));
  if (commitment_of(candidate) != sealed.commitment) {
    return std::nullopt;
  }
  return candidate;
}

bool check_distinct(std::span<const Digest> commitments) {
  std::set<Digest> seen;
  for (const Digest& digest : commitments) {
    if (!seen.insert(digest).second) {
      return false;
    }
  }
  return true;
}

bool check_distinct(const MsgSecrets& msg) {
  std::vector<Digest> digests;
  digests.reserve(msg.items.size());
  for (const SealedSecret& item : msg.items) {
    digests.push_back(item.commitment);
  }
  return check_distinct(digests);
}

}  // namespace knot
