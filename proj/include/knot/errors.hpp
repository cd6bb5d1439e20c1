#ifndef KNOT_ERRORS_HPP
#define KNOT_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace knot {

// Failure classes. Wire decode failures get one code per cause so a
// transcript consumer can tell truncation from corruption.
enum class Errc {
  param,              // bad argument or parameter set
  choice,             // bad receiver choice list
  state,              // protocol message applied in the wrong phase
  protocol,           // malformed or out-of-contract peer message
  wire_truncated,     // frame or field shorter than declared
  wire_bad_magic,     // frame does not start with "KNOT"
  wire_bad_version,   // unsupported frame version
  wire_unknown_type,  // unassigned message type byte
  wire_non_canonical, // integer with leading zero byte or similar
  wire_trailing,      // bytes left over after a complete message
  wire_oversize,      // declared frame body beyond the allowed cap
  wire_bad_value,     // field decodes but violates a message invariant
  accounting,         // transcript incomplete or inconsistent
  io,                 // file or socket failure
  remote_abort,       // peer sent an Error frame
  verify_failed,      // commitment check failed after decryption
  same_message,       // duplicate commitments detected
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

// Commitment mismatch at one secret index (1-based).
class VerifyError : public Error {
 public:
  VerifyError(std::uint32_t index, const std::string& message)
      : Error(Errc::verify_failed, message), index_(index) {}

  std::uint32_t index() const { return index_; }

 private:
  std::uint32_t index_;
};

}  // namespace knot

#endif
