#ifndef KNOT_WIRE_HPP
#define KNOT_WIRE_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "knot/protocol.hpp"
#include "knot/sealing.hpp"

namespace knot {

// Frame layout, all integers big-endian:
//
//   magic "KNOT" | version 0x01 | msg_type | body_len u32 | body
//
// Body fields: `int` is a u32 length prefix followed by that many
// minimal big-endian magnitude bytes (length 0 encodes zero; a leading
// zero byte is non-canonical and rejected). `list` is a u32 count
// followed by the elements.
//
//   Hello   0x01: suite u8 | int p | int q | int g | n u32 | k u32 | n * int xs
//   MsgA    0x02: int ma
//   Choice  0x03: list mjs | int mb
//   Reply   0x04: list replies
//   Secrets 0x05: count u32 | count * (u32 ct_len | ct | 32-byte commitment)
//   Error   0x7F: code u8 | u32 len | text
//
// Decoding is total: any byte string yields a message or an Error with a
// wire_* code, never undefined behavior. Trailing bytes at frame or body
// level are rejected so every message has exactly one encoding.

enum class MsgType : std::uint8_t {
  Hello = 0x01,
  MA = 0x02,
  Choice = 0x03,
  Reply = 0x04,
  Secrets = 0x05,
  Error = 0x7F,
};

inline constexpr std::array<std::uint8_t, 4> kMagic = {'K', 'N', 'O', 'T'};
inline constexpr std::uint8_t kVersion = 0x01;

// Suite 0x01: SHA-256 commitments, hash-counter keystream cipher.
inline constexpr std::uint8_t kSuiteSha256 = 0x01;

struct Hello {
  std::uint8_t suite = kSuiteSha256;
  SessionParams session;
};

struct ErrorMsg {
  std::uint8_t code = 0;
  std::string text;
};

// Peer error codes carried in Error frames.
inline constexpr std::uint8_t kErrAgreementMismatch = 0x01;
inline constexpr std::uint8_t kErrProtocol = 0x02;
inline constexpr std::uint8_t kErrInternal = 0x03;

using Message = std::variant<Hello, MsgA, MsgChoice, MsgReply, MsgSecrets,
                             ErrorMsg>;

MsgType msg_type_of(const Message& msg);
const char* msg_type_name(MsgType type);

std::vector<std::uint8_t> encode_body(const Message& msg);
std::vector<std::uint8_t> encode(const Message& msg);  // full frame
Message decode(std::span<const std::uint8_t> frame);

enum class Direction : std::uint8_t {
  ToReceiver,  // sender -> receiver
  ToSender,    // receiver -> sender
};

struct FrameRecord {
  Direction dir;
  std::vector<std::uint8_t> bytes;  // complete frame, byte-exact
};

/// Append-only log of every frame a session moved, in order. Both ends of
/// an honest run record identical bytes, so a transcript replays into the
/// same cost report wherever it was captured.
class Transcript {
 public:
  void append(Direction dir, std::vector<std::uint8_t> frame_bytes);

  const std::vector<FrameRecord>& frames() const { return frames_; }
  bool empty() const { return frames_.empty(); }
  std::size_t size() const { return frames_.size(); }
  std::uint64_t total_bytes() const;

 private:
  std::vector<FrameRecord> frames_;
};

}  // namespace knot

#endif
