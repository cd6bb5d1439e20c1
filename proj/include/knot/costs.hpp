#ifndef KNOT_COSTS_HPP
#define KNOT_COSTS_HPP

#include <cstdint>
#include <string>

#include "knot/protocol.hpp"
#include "knot/wire.hpp"

namespace knot {

enum class CostMode : std::uint8_t { OneOfN, KOfN, NaiveKFold };

const char* cost_mode_name(CostMode mode);

/// Per-run cost figures under a fixed accounting convention:
///   - the two opening powers (M_A and M_B) are setup and not counted;
///   - every key K_Aj, every reply, every blinded index M_j and every
///     recovered key K_Bj counts as exactly one exponentiation, with
///     exponent products reduced so one power suffices;
///   - each group element on the wire counts as one transferred element
///     and each sealed secret as one unit, whatever its byte size.
/// Under this convention a conforming run costs the sender n+k powers,
/// the receiver 2k, and moves n+2k+2 elements (n+1, 2 and n+4 at k = 1).
struct CostReport {
  std::uint64_t sender_exps = 0;
  std::uint64_t receiver_exps = 0;
  std::uint64_t elements = 0;
  std::uint64_t bytes_on_wire = 0;  // secondary figure, all frames included
  std::uint32_t n = 0;
  std::uint32_t k = 0;
  CostMode mode = CostMode::KOfN;

  bool operator==(const CostReport&) const = default;
};

// Formula report for a conforming direct run of the given size.
CostReport formula_direct(std::uint32_t n, std::uint32_t k);

// Cost of obtaining k secrets by running the single-choice protocol k
// times: k * (n+1) sender powers, 2k receiver powers, k * (n+4) elements.
CostReport naive_baseline(std::uint32_t n, std::uint32_t k);

// Replays a complete transcript (Hello, MsgA, MsgChoice, MsgReply,
// MsgSecrets, in order with consistent sizes) into a report. The element
// tally comes from the actual frame contents; the exponentiation figures
// are the convention counts for the observed (n, k). Throws
// Errc::accounting on an incomplete or inconsistent transcript.
CostReport account_run(const Transcript& transcript,
                       const SessionParams& session);

// One key=value line, machine-readable.
std::string render_kv(const CostReport& report);

// Two-column table comparing direct and naive k-fold costs.
std::string render_comparison(const CostReport& direct,
                              const CostReport& naive);

}  // namespace knot

#endif
