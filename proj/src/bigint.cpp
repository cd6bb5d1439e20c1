#include "knot/bigint.hpp"

#include <cctype>

#include "knot/errors.hpp"

namespace knot {

std::vector<std::uint8_t> to_bytes_be(const Bigint& value) {
  if (value < 0) {
    throw Error(Errc::param, "cannot serialize negative integer");
  }
  if (value == 0) {
    return {};
  }
  std::vector<std::uint8_t> out((mpz_sizeinbase(value.get_mpz_t(), 2) + 7) / 8);
  std::size_t written = 0;
  mpz_export(out.data(), &written, 1, 1, 1, 0, value.get_mpz_t());
  out.resize(written);
  return out;
}

Bigint from_bytes_be(std::span<const std::uint8_t> bytes) {
  Bigint value;
  if (!bytes.empty()) {
    mpz_import(value.get_mpz_t(), bytes.size(), 1, 1, 1, 0, bytes.data());
  }
  return value;
}

std::size_t bit_length(const Bigint& value) {
  if (value == 0) {
    return 0;
  }
  return mpz_sizeinbase(value.get_mpz_t(), 2);
}

std::string to_dec(const Bigint& value) { return value.get_str(10); }

Bigint from_dec(const std::string& text) {
  if (text.empty()) {
    throw Error(Errc::param, "empty integer literal");
  }
  std::size_t start = text[0] == '-' ? 1 : 0;
  if (start == text.size()) {
    throw Error(Errc::param, "integer literal without digits");
  }
  for (std::size_t i = start; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw Error(Errc::param, "invalid integer literal: " + text);
    }
  }
  Bigint value;
  if (mpz_set_str(value.get_mpz_t(), text.c_str(), 10) != 0) {
    throw Error(Errc::param, "invalid integer literal: " + text);
  }
  return value;
}

std::uint64_t to_u64(const Bigint& value) {
  if (value < 0 || bit_length(value) > 64) {
    throw Error(Errc::param, "integer out of uint64 range");
  }
  std::uint64_t out = 0;
  for (const std::uint8_t byte : to_bytes_be(value)) {
    out = (out << 8) | byte;
  }
  return out;
}

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::param: return "param";
    case Errc::choice: return "choice";
    case Errc::state: return "state";
    case Errc::protocol: return "protocol";
    case Errc::wire_truncated: return "wire_truncated";
    case Errc::wire_bad_magic: return "wire_bad_magic";
    case Errc::wire_bad_version: return "wire_bad_version";
    case Errc::wire_unknown_type: return "wire_unknown_type";
    case Errc::wire_non_canonical: return "wire_non_canonical";
    case Errc::wire_trailing: return "wire_trailing";
    case Errc::wire_oversize: return "wire_oversize";
    case Errc::wire_bad_value: return "wire_bad_value";
    case Errc::accounting: return "accounting";
    case Errc::io: return "io";
    case Errc::remote_abort: return "remote_abort";
    case Errc::verify_failed: return "verify_failed";
    case Errc::same_message: return "same_message";
  }
  return "unknown";
}

}  // namespace knot
