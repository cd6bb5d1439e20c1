#ifndef KNOT_PROTOCOL_HPP
#define KNOT_PROTOCOL_HPP

#include <cstdint>
#include <utility>
#include <vector>

#include "knot/group.hpp"

namespace knot {

/// Everything both parties agree on before the first message: the group,
/// the public index set x_1..x_n (one index per secret), and the transfer
/// count k.
struct SessionParams {
  GroupParams group;
  std::vector<Bigint> xs;
  std::uint32_t k = 1;

  std::uint32_t n() const { return static_cast<std::uint32_t>(xs.size()); }
};

// The conventional index set {1, 2, ..., n}.
std::vector<Bigint> default_index_set(std::uint32_t n);

// Structural checks: xs distinct and inside [1, p-2], 1 <= k <= n, and the
// group fields shaped like a safe-prime group. Primality is not re-proven
// here; that is validate_params' job when parameters enter the system.
void validate_session(const SessionParams& session);

enum class SenderPhase : std::uint8_t { Init, SentMA, Responded, Sealed };
enum class ReceiverPhase : std::uint8_t { Init, SentChoice, Recovered };

// The four protocol payloads, in flow order. MsgSecrets lives with the
// sealing code since it carries ciphertexts, not group elements.

struct MsgA {
  Bigint ma;  // g^(N_A1 + sum(xs)) mod p
};

struct MsgChoice {
  std::vector<Bigint> mjs;  // (M_A / g^(x_cj))^(N_B1 N_B2 / N_B3) mod p
  Bigint mb;                // g^N_B1 mod p
};

struct MsgReply {
  std::vector<Bigint> replies;  // M_j^N_A2 mod p
};

/// Sender side of one session. Operations consume the state value and
/// return the advanced one; phases only move forward.
struct SenderState {
  SessionParams session;
  Bigint nonce_a1;
  Bigint nonce_a2;
  Bigint exp_sum;             // N_A1 + sum(xs), cached for the key formula
  std::vector<Bigint> keys;   // K_A1..K_An once Responded
  SenderPhase phase = SenderPhase::Init;
  ExpCounter exps;            // accounted exponentiations
};

/// Receiver side. The three nonces obey N_B3 = factor * N_B2 with factor
/// dividing N_B1 exactly, so the two exponent ratios the protocol needs
/// are plain integers and no inverse of N_B3 is ever taken.
struct ReceiverState {
  SessionParams session;
  std::vector<std::uint32_t> choices;  // 1-based, sorted ascending
  Bigint nonce_b1;
  Bigint nonce_b2;
  Bigint nonce_b3;
  Bigint factor;
  std::vector<Bigint> keys;  // K_B1..K_Bk once Recovered
  ReceiverPhase phase = ReceiverPhase::Init;
  ExpCounter exps;
};

// Draws N_A1 uniform in [1, p-2] and opens with M_A. Phase -> SentMA.
std::pair<SenderState, MsgA> sender_init(const SessionParams& session,
                                         RandomSource& rng);

// Validates and sorts the choice list, draws the nonce triple, and blinds
// each chosen index. The M_j exponent is the exact integer N_B1 / factor.
// Pass factor > 0 to override the default max(k, 2); any factor works as
// long as it divides N_B1, which the construction guarantees.
std::pair<ReceiverState, MsgChoice> receiver_choose(
    const SessionParams& session, const MsgA& msg_a,
    std::vector<std::uint32_t> choices, RandomSource& rng,
    const Bigint& factor_override = 0);

// 1-out-of-n entry point: the k = 1 session with a single choice.
std::pair<ReceiverState, MsgChoice> receiver_choose_one(
    const SessionParams& session, const MsgA& msg_a, std::uint32_t choice,
    RandomSource& rng, const Bigint& factor_override = 0);

// Draws N_A2, derives all n keys K_Aj = M_B^((N_A1 + sum(xs) - x_j) N_A2),
// and powers each received M_j by N_A2. Computes every key whatever the
// choices were; that is what keeps the sender oblivious. Rejects any
// choice message that does not carry exactly k elements.
std::pair<SenderState, MsgReply> sender_respond(SenderState state,
                                                const MsgChoice& msg_choice,
                                                RandomSource& rng);

// Final sender transition once the sealed secrets have gone out.
SenderState sender_seal(SenderState state);

// K_Bj = reply_j^(N_B3 / N_B2) = reply_j^factor. Phase -> Recovered.
// Returns the advanced state and the k recovered keys in choice order.
std::pair<ReceiverState, std::vector<Bigint>> receiver_recover(
    ReceiverState state, const MsgReply& msg_reply);

}  // namespace knot

#endif
