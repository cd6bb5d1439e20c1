#include "knot/protocol.hpp"

#include <algorithm>
#include <set>

#include "knot/errors.hpp"

namespace knot {

namespace {

const Bigint kU64Max = (Bigint(1) << 64) - 1;

// Always-on internal invariant check; these hold by construction, so a
// trip means a bug, not bad input.
void invariant(bool ok, const char* what) {
  if (!ok) {
    throw Error(Errc::state, std::string("internal invariant broken: ") + what);
  }
}

void require_element(const Bigint& value, const Bigint& p, const char* what) {
  if (value < 1 || value >= p) {
    throw Error(Errc::protocol, std::string(what) + " outside [1, p-1]");
  }
}

Bigint sum_indices(const std::vector<Bigint>& xs) {
  Bigint total = 0;
  for (const Bigint& x : xs) total += x;
  return total;
}

}  // namespace

std::vector<Bigint> default_index_set(std::uint32_t n) {
  std::vector<Bigint> xs;
  xs.reserve(n);
  for (std::uint32_t i = 1; i <= n; ++i) xs.emplace_back(i);
  return xs;
}

void validate_session(const SessionParams& session) {
  const GroupParams& group = session.group;
  if (group.p < 5 || group.p != 2 * group.q + 1) {
    throw Error(Errc::param, "group modulus is not of safe-prime shape");
  }
  if (group.g < 2 || group.g > group.p - 2) {
    throw Error(Errc::param, "generator outside [2, p-2]");
  }
  if (session.xs.empty()) {
    throw Error(Errc::param, "index set is empty");
  }
  if (session.k < 1 || session.k > session.n()) {
    throw Error(Errc::param, "transfer count k outside [1, n]");
  }
  std::set<Bigint> seen;
  for (const Bigint& x : session.xs) {
    if (x < 1 || x > group.p - 2) {
      throw Error(Errc::param, "index " + to_dec(x) + " outside [1, p-2]");
    }
    if (!seen.insert(x).second) {
      throw Error(Errc::param, "duplicate index " + to_dec(x));
    }
  }
}

std::pair<SenderState, MsgA> sender_init(const SessionParams& session,
                                         RandomSource& rng) {
  validate_session(session);
  SenderState state;
  state.session = session;
  state.nonce_a1 = rng.uniform(1, session.group.p - 2);
  state.exp_sum = state.nonce_a1 + sum_indices(session.xs);
  // Opening message; by convention this setup power is not accounted.
  MsgA msg{mod_exp(session.group.g, state.exp_sum, session.group)};
  state.phase = SenderPhase::SentMA;
  return {std::move(state), std::move(msg)};
}

std::pair<ReceiverState, MsgChoice> receiver_choose(
    const SessionParams& session, const MsgA& msg_a,
    std::vector<std::uint32_t> choices, RandomSource& rng,
    const Bigint& factor_override) {
  validate_session(session);
  require_element(msg_a.ma, session.group.p, "M_A");

  if (choices.size() != session.k) {
    throw Error(Errc::choice, "expected exactly " + std::to_string(session.k) +
                                  " choices, got " +
                                  std::to_string(choices.size()));
  }
  std::sort(choices.begin(), choices.end());
  for (std::size_t i = 0; i < choices.size(); ++i) {
    if (choices[i] < 1 || choices[i] > session.n()) {
      throw Error(Errc::choice,
                  "choice " + std::to_string(choices[i]) + " outside [1, n]");
    }
    if (i > 0 && choices[i] == choices[i - 1]) {
      throw Error(Errc::choice,
                  "duplicate choice " + std::to_string(choices[i]));
    }
  }

  ReceiverState state;
  state.session = session;
  state.choices = std::move(choices);

  if (factor_override < 0) {
    throw Error(Errc::param, "factor must be positive");
  }
  state.factor = factor_override > 0
                     ? factor_override
                     : Bigint(std::max<std::uint32_t>(session.k, 2));

  // N_B1 = factor * m and N_B3 = factor * N_B2, so factor | N_B1 and
  // N_B3 / N_B2 = factor hold by construction. The exponent applied to
  // each blinded index, N_B1 N_B2 / N_B3, is then exactly m.
  Bigint m = rng.uniform(1, kU64Max);
  state.nonce_b1 = state.factor * m;
  state.nonce_b2 = rng.uniform(1, kU64Max);
  state.nonce_b3 = state.factor * state.nonce_b2;
  invariant(state.nonce_b1 % state.factor == 0, "factor must divide N_B1");

  const GroupParams& group = session.group;
  MsgChoice msg;
  msg.mjs.reserve(state.choices.size());
  for (const std::uint32_t choice : state.choices) {
    const Bigint& x = session.xs[choice - 1];
    Bigint blinded = mod_inv(mod_exp(group.g, x, group), group);
    blinded = msg_a.ma * blinded % group.p;
    msg.mjs.push_back(mod_exp(blinded, m, group, &state.exps));
  }
  // Setup power, not accounted.
  msg.mb = mod_exp(group.g, state.nonce_b1, group);

  state.phase = ReceiverPhase::SentChoice;
  return {std::move(state), std::move(msg)};
}

std::pair<ReceiverState, MsgChoice> receiver_choose_one(
    const SessionParams& session, const MsgA& msg_a, std::uint32_t choice,
    RandomSource& rng, const Bigint& factor_override) {
  if (session.k != 1) {
    throw Error(Errc::param, "single-choice entry point needs k = 1");
  }
  return receiver_choose(session, msg_a, {choice}, rng, factor_override);
}

std::pair<SenderState, MsgReply> sender_respond(SenderState state,
                                                const MsgChoice& msg_choice,
                                                RandomSource& rng) {
  if (state.phase != SenderPhase::SentMA) {
    throw Error(Errc::state, "sender_respond requires phase SentMA");
  }
  const SessionParams& session = state.session;
  const GroupParams& group = session.group;

  // k was fixed in the agreement; more elements would let the receiver
  // exceed the budget, fewer would waste it. Both are rejected.
  if (msg_choice.mjs.size() != session.k) {
    throw Error(Errc::protocol,
                "choice message carries " + std::to_string(msg_choice.mjs.size()) +
                    " elements, agreed k is " + std::to_string(session.k));
  }
  require_element(msg_choice.mb, group.p, "M_B");
  for (const Bigint& mj : msg_choice.mjs) {
    require_element(mj, group.p, "M_j");
  }

  state.nonce_a2 = rng.uniform(1, group.p - 2);

  state.keys.clear();
  state.keys.reserve(session.n());
  for (const Bigint& x : session.xs) {
    Bigint exponent = state.exp_sum - x;
    // x is one term of exp_sum, so the difference is at least N_A1 >= 1.
    invariant(exponent > 0, "key exponent must stay positive");
    // Single accounted power with the combined exponent.
    state.keys.push_back(
        mod_exp(msg_choice.mb, exponent * state.nonce_a2, group, &state.exps));
  }

  MsgReply reply;
  reply.replies.reserve(msg_choice.mjs.size());
  for (const Bigint& mj : msg_choice.mjs) {
    reply.replies.push_back(mod_exp(mj, state.nonce_a2, group, &state.exps));
  }

  state.phase = SenderPhase::Responded;
  return {std::move(state), std::move(reply)};
}

SenderState sender_seal(SenderState state) {
  if (state.phase != SenderPhase::Responded) {
    throw Error(Errc::state, "sender_seal requires phase Responded");
  }
  state.phase = SenderPhase::Sealed;
  return state;
}

std::pair<ReceiverState, std::vector<Bigint>> receiver_recover(
    ReceiverState state, const MsgReply& msg_reply) {
  if (state.phase != ReceiverPhase::SentChoice) {
    throw Error(Errc::state, "receiver_recover requires phase SentChoice");
  }
  if (msg_reply.replies.size() != state.choices.size()) {
    throw Error(Errc::protocol,
                "reply carries " + std::to_string(msg_reply.replies.size()) +
                    " elements, expected " + std::to_string(state.choices.size()));
  }
  const GroupParams& group = state.session.group;
  invariant(state.nonce_b3 == state.factor * state.nonce_b2,
            "N_B3 must equal factor * N_B2");

  state.keys.clear();
  state.keys.reserve(msg_reply.replies.size());
  for (const Bigint& reply : msg_reply.replies) {
    require_element(reply, group.p, "reply");
    // N_B3 / N_B2 is exactly the factor; no modular inverse involved.
    state.keys.push_back(mod_exp(reply, state.factor, group, &state.exps));
  }

  state.phase = ReceiverPhase::Recovered;
  std::vector<Bigint> keys = state.keys;
  return {std::move(state), std::move(keys)};
}

}  // namespace knot
