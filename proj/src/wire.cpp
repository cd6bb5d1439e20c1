#include "knot/wire.hpp"

#include <utility>

#include "knot/errors.hpp"

namespace knot {

namespace {

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t value) {
  out.push_back(static_cast<std::uint8_t>(value >> 24));
  out.push_back(static_cast<std::uint8_t>(value >> 16));
  out.push_back(static_cast<std::uint8_t>(value >> 8));
  out.push_back(static_cast<std::uint8_t>(value));
}

void put_int(std::vector<std::uint8_t>& out, const Bigint& value) {
  const std::vector<std::uint8_t> bytes = to_bytes_be(value);
  put_u32(out, static_cast<std::uint32_t>(bytes.size()));
  out.insert(out.end(), bytes.begin(), bytes.end());
}

void put_int_list(std::vector<std::uint8_t>& out,
                  const std::vector<Bigint>& values) {
  put_u32(out, static_cast<std::uint32_t>(values.size()));
  for (const Bigint& value : values) put_int(out, value);
}

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> data) : data_(data) {}

  std::uint8_t u8() {
    need(1);
    return data_[pos_++];
  }

  std::uint32_t u32() {
    need(4);
    std::uint32_t value = 0;
    for (int i = 0; i < 4; ++i) value = (value << 8) | data_[pos_++];
    return value;
  }

  std::span<const std::uint8_t> take(std::size_t len) {
    need(len);
    auto out = data_.subspan(pos_, len);
    pos_ += len;
    return out;
  }

  Bigint integer() {
    const std::uint32_t len = u32();
    auto bytes = take(len);
    if (len > 0 && bytes[0] == 0) {
      throw Error(Errc::wire_non_canonical, "integer has a leading zero byte");
    }
    return from_bytes_be(bytes);
  }

  // Group element or nonce field: zero is never a legal value on the wire.
  Bigint element() {
    Bigint value = integer();
    if (value == 0) {
      throw Error(Errc::wire_bad_value, "zero where a group element expected");
    }
    return value;
  }

  std::vector<Bigint> element_list() {
    const std::uint32_t count = u32();
    std::vector<Bigint> out;
    for (std::uint32_t i = 0; i < count; ++i) out.push_back(element());
    return out;
  }

  bool done() const { return pos_ == data_.size(); }
  std::size_t remaining() const { return data_.size() - pos_; }

 private:
  void need(std::size_t len) {
    if (remaining() < len) {
      throw Error(Errc::wire_truncated, "frame shorter than declared content");
    }
  }

  std::span<const std::uint8_t> data_;
  std::size_t pos_ = 0;
};

Message decode_body(MsgType type, Reader& r) {
  switch (type) {
    case MsgType::Hello: {
      Hello hello;
      hello.suite = r.u8();
      if (hello.suite != kSuiteSha256) {
        throw Error(Errc::wire_bad_value, "unknown cipher suite");
      }
      hello.session.group.p = r.element();
      hello.session.group.q = r.element();
      hello.session.group.g = r.element();
      const std::uint32_t n = r.u32();
      hello.session.k = r.u32();
      for (std::uint32_t i = 0; i < n; ++i) {
        hello.session.xs.push_back(r.element());
      }
      try {
        validate_session(hello.session);
      } catch (const Error& e) {
        throw Error(Errc::wire_bad_value, e.what());
      }
      return hello;
    }
    case MsgType::MA:
      return MsgA{r.element()};
    case MsgType::Choice: {
      MsgChoice msg;
      msg.mjs = r.element_list();
      msg.mb = r.element();
      return msg;
    }
    case MsgType::Reply:
      return MsgReply{r.element_list()};
    case MsgType::Secrets: {
      MsgSecrets msg;
      const std::uint32_t count = r.u32();
      for (std::uint32_t i = 0; i < count; ++i) {
        const std::uint32_t ct_len = r.u32();
        if (ct_len == 0) {
          throw Error(Errc::wire_bad_value, "empty ciphertext");
        }
        auto ct = r.take(ct_len);
        SealedSecret item;
        item.ciphertext.assign(ct.begin(), ct.end());
        auto digest = r.take(item.commitment.size());
        std::copy(digest.begin(), digest.end(), item.commitment.begin());
        msg.items.push_back(std::move(item));
      }
      return msg;
    }
    case MsgType::Error: {
      ErrorMsg msg;
      msg.code = r.u8();
      const std::uint32_t len = r.u32();
      auto text = r.take(len);
      msg.text.assign(text.begin(), text.end());
      return msg;
    }
  }
  throw Error(Errc::wire_unknown_type, "unassigned message type");
}

}  // namespace

MsgType msg_type_of(const Message& msg) {
  switch (msg.index()) {
    case 0: return MsgType::Hello;
    case 1: return MsgType::MA;
    case 2: return MsgType::Choice;
    case 3: return MsgType::Reply;
    case 4: return MsgType::Secrets;
    default: return MsgType::Error;
  }
}

const char* msg_type_name(MsgType type) {
  switch (type) {
    case MsgType::Hello: return "Hello";
    case MsgType::MA: return "MsgA";
    case MsgType::Choice: return "MsgChoice";
    case MsgType::Reply: return "MsgReply";
    case MsgType::Secrets: return "MsgSecrets";
    case MsgType::Error: return "Error";
  }
  return "?";
}

std::vector<std::uint8_t> encode_body(const Message& msg) {
  std::vector<std::uint8_t> out;
  if (const auto* hello = std::get_if<Hello>(&msg)) {
    out.push_back(hello->suite);
    put_int(out, hello->session.group.p);
    put_int(out, hello->session.group.q);
    put_int(out, hello->session.group.g);
    put_u32(out, hello->session.n());
    put_u32(out, hello->session.k);
    for (const Bigint& x : hello->session.xs) put_int(out, x);
  } else if (const auto* ma = std::get_if<MsgA>(&msg)) {
    put_int(out, ma->ma);
  } else if (const auto* choice = std::get_if<MsgChoice>(&msg)) {
    put_int_list(out, choice->mjs);
    put_int(out, choice->mb);
  } else if (const auto* reply = std::get_if<MsgReply>(&msg)) {
    put_int_list(out, reply->replies);
  } else if (const auto* secrets = std::get_if<MsgSecrets>(&msg)) {
    put_u32(out, static_cast<std::uint32_t>(secrets->items.size()));
    for (const SealedSecret& item : secrets->items) {
      put_u32(out, static_cast<std::uint32_t>(item.ciphertext.size()));
      out.insert(out.end(), item.ciphertext.begin(), item.ciphertext.end());
      out.insert(out.end(), item.commitment.begin(), item.commitment.end());
    }
  } else {
    const auto& err = std::get<ErrorMsg>(msg);
    out.push_back(err.code);
    put_u32(out, static_cast<std::uint32_t>(err.text.size()));
    out.insert(out.end(), err.text.begin(), err.text.end());
  }
  return out;
}

std::vector<std::uint8_t> encode(const Message& msg) {
  const std::vector<std::uint8_t> body = encode_body(msg);
  std::vector<std::uint8_t> out;
  out.reserve(body.size() + 10);
  out.insert(out.end(), kMagic.begin(), kMagic.end());
  out.push_back(kVersion);
  out.push_back(static_cast<std::uint8_t>(msg_type_of(msg)));
  put_u32(out, static_cast<std::uint32_t>(body.size()));
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Message decode(std::span<const std::uint8_t> frame) {
  Reader r(frame);
  if (frame.size() < 10) {
    throw Error(Errc::wire_truncated, "frame shorter than the fixed header");
  }
  auto magic = r.take(4);
  if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
    throw Error(Errc::wire_bad_magic, "bad frame magic");
  }
  if (r.u8() != kVersion) {
    throw Error(Errc::wire_bad_version, "unsupported frame version");
  }
  const std::uint8_t type_byte = r.u8();
  switch (type_byte) {
    case 0x01: case 0x02: case 0x03: case 0x04: case 0x05: case 0x7F:
      break;
    default:
      throw Error(Errc::wire_unknown_type, "unassigned message type");
  }
  const MsgType type = static_cast<MsgType>(type_byte);
  const std::uint32_t body_len = r.u32();
  if (body_len > r.remaining()) {
    throw Error(Errc::wire_truncated, "frame body shorter than declared");
  }
  if (body_len < r.remaining()) {
    throw Error(Errc::wire_trailing, "bytes after the frame body");
  }
  Message msg = decode_body(type, r);
  if (!r.done()) {
    throw Error(Errc::wire_trailing, "bytes after the message content");
  }
  return msg;
}

void Transcript::append(Direction dir, std::vector<std::uint8_t> frame_bytes) {
  frames_.push_back(FrameRecord{dir, std::move(frame_bytes)});
}

std::uint64_t Transcript::total_bytes() const {
  std::uint64_t total = 0;
  for (const FrameRecord& record : frames_) total += record.bytes.size();
  return total;
}

}  // namespace knot
