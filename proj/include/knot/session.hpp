#ifndef KNOT_SESSION_HPP
#define KNOT_SESSION_HPP

#include <memory>
#include <optional>
#include <vector>

#include "knot/costs.hpp"
#include "knot/transport.hpp"

namespace knot {

/// Full-session drivers: the five-frame exchange
/// Hello -> MsgA -> MsgChoice -> MsgReply -> MsgSecrets over a Stream,
/// with transcript capture and cost accounting on both ends. A side that
/// detects a violation sends an Error frame before throwing.

struct SenderRun {
  SenderState state;      // phase Sealed; carries the accounted powers
  Transcript transcript;
  CostReport report;
};

SenderRun run_sender(Stream& stream, const SessionParams& session,
                     const std::vector<Secret>& secrets, RandomSource& rng);

struct ReceiverExpectation {
  GroupParams group;
  std::uint32_t k = 1;
  // n and the index set come from the handshake unless pinned here, in
  // which case the handshake must match exactly.
  std::optional<std::vector<Bigint>> xs;
};

struct ReceiverRun {
  ReceiverState state;                 // phase Recovered
  SessionParams session;               // as agreed in the handshake
  std::vector<std::uint32_t> choices;  // ascending
  std::vector<Secret> secrets;         // one per choice, same order
  Transcript transcript;
  CostReport report;
};

// Throws Errc::same_message when commitments collide, VerifyError when a
// chosen secret fails its commitment check, Errc::protocol /
// Errc::remote_abort / wire errors otherwise.
ReceiverRun run_receiver(Stream& stream, const ReceiverExpectation& expected,
                         std::vector<std::uint32_t> choices, RandomSource& rng,
                         const Bigint& factor_override = 0);

// Receiver-side final step, also usable standalone: reject colliding
// commitments, then decrypt and verify each chosen index against its
// commitment. Returns the recovered secrets in choice order.
std::vector<Secret> open_secrets(const ReceiverState& state,
                                 const MsgSecrets& msg);

// Sender-side sealing: derive the per-index key from K_Aj and seal S_j.
MsgSecrets seal_all(const SenderState& state,
                    const std::vector<Secret>& secrets);

struct LocalRun {
  SenderRun sender;
  ReceiverRun receiver;
};

// Both parties in-process over an in-memory pipe. Distinct randomness
// sources keep the draw order on each side well defined.
LocalRun run_local(const SessionParams& session,
                   const std::vector<Secret>& secrets,
                   std::vector<std::uint32_t> choices, RandomSource& sender_rng,
                   RandomSource& receiver_rng,
                   const Bigint& factor_override = 0);

}  // namespace knot

#endif
