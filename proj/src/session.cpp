#include "knot/session.hpp"

#include <thread>

#include "knot/errors.hpp"

namespace knot {

namespace {

// Send an Error frame so the peer can stop waiting, then rethrow.
[[noreturn]] void abort_session(Stream& stream, Transcript* transcript,
                                Direction dir, std::uint8_t code,
                                const Error& cause) {
  try {
    send_message(stream, ErrorMsg{code, cause.what()}, transcript, dir);
  } catch (const Error&) {
    // Peer already gone; the original error matters more.
  }
  throw cause;
}

template <typename T>
T expect_message(Message msg, const char* what) {
  if (const auto* err = std::get_if<ErrorMsg>(&msg)) {
    throw Error(Errc::remote_abort, "peer aborted: " + err->text);
  }
  if (!std::holds_alternative<T>(msg)) {
    throw Error(Errc::protocol,
                std::string("expected ") + what + ", got " +
                    msg_type_name(msg_type_of(msg)));
  }
  return std::get<T>(std::move(msg));
}

}  // namespace

MsgSecrets seal_all(const SenderState& state,
                    const std::vector<Secret>& secrets) {
  if (state.phase != SenderPhase::Responded) {
    throw Error(Errc::state, "sealing requires phase Responded");
  }
  if (secrets.size() != state.session.n()) {
    throw Error(Errc::param, "need exactly one secret per index");
  }
  MsgSecrets msg;
  msg.items.reserve(secrets.size());
  for (std::uint32_t i = 0; i < secrets.size(); ++i) {
    const SymmetricKey key =
        derive_key(state.keys[i], state.session, i + 1);
    msg.items.push_back(seal(secrets[i], key));
  }
  return msg;
}

std::vector<Secret> open_secrets(const ReceiverState& state,
                                 const MsgSecrets& msg) {
  if (state.phase != ReceiverPhase::Recovered) {
    throw Error(Errc::state, "opening requires phase Recovered");
  }
  if (msg.items.size() != state.session.n()) {
    throw Error(Errc::protocol, "sealed-secret count differs from n");
  }
  if (!check_distinct(msg)) {
    throw Error(Errc::same_message,
                "duplicate commitments: sender is repeating a secret");
  }
  std::vector<Secret> out;
  out.reserve(state.choices.size());
  for (std::size_t j = 0; j < state.choices.size(); ++j) {
    const std::uint32_t index = state.choices[j];
    const SymmetricKey key = derive_key(state.keys[j], state.session, index);
    std::optional<Secret> secret = unseal(msg.items[index - 1], key);
    if (!secret) {
      throw VerifyError(index, "commitment mismatch at index " +
                                   std::to_string(index) +
                                   ": fake commitment or corrupt transfer");
    }
    out.push_back(std::move(*secret));
  }
  return out;
}

SenderRun run_sender(Stream& stream, const SessionParams& session,
                     const std::vector<Secret>& secrets, RandomSource& rng) {
  validate_session(session);
  if (secrets.size() != session.n()) {
    throw Error(Errc::param, "need exactly one secret per index");
  }

  SenderRun run;
  Transcript& t = run.transcript;

  send_message(stream, Hello{kSuiteSha256, session}, &t, Direction::ToReceiver);

  auto [state, msg_a] = sender_init(session, rng);
  send_message(stream, msg_a, &t, Direction::ToReceiver);

  Message raw = recv_message(stream, &t, Direction::ToSender);
  MsgChoice choice = expect_message<MsgChoice>(std::move(raw), "MsgChoice");

  try {
    auto [responded, reply] = sender_respond(std::move(state), choice, rng);
    state = std::move(responded);
    send_message(stream, reply, &t, Direction::ToReceiver);
  } catch (const Error& e) {
    abort_session(stream, &t, Direction::ToReceiver, kErrProtocol, e);
  }

  send_message(stream, seal_all(state, secrets), &t, Direction::ToReceiver);
  run.state = sender_seal(std::move(state));
  run.report = account_run(t, session);
  return run;
}

ReceiverRun run_receiver(Stream& stream, const ReceiverExpectation& expected,
                         std::vector<std::uint32_t> choices, RandomSource& rng,
                         const Bigint& factor_override) {
  ReceiverRun run;
  Transcript& t = run.transcript;

  Message raw = recv_message(stream, &t, Direction::ToReceiver);
  Hello hello = expect_message<Hello>(std::move(raw), "Hello");

  const SessionParams& session = hello.session;
  {
    const bool group_ok = session.group.p == expected.group.p &&
                          session.group.q == expected.group.q &&
                          session.group.g == expected.group.g;
    const std::vector<Bigint> want_xs =
        expected.xs ? *expected.xs : default_index_set(session.n());
    const bool agreed = group_ok && session.k == expected.k &&
                        session.xs == want_xs;
    if (!agreed) {
      abort_session(stream, &t, Direction::ToSender, kErrAgreementMismatch,
                    Error(Errc::protocol,
                          "handshake differs from the agreed parameters"));
    }
  }

  raw = recv_message(stream, &t, Direction::ToReceiver);
  MsgA msg_a = expect_message<MsgA>(std::move(raw), "MsgA");

  ReceiverState state;
  try {
    auto [chosen, msg_choice] =
        receiver_choose(session, msg_a, std::move(choices), rng,
                        factor_override);
    state = std::move(chosen);
    send_message(stream, msg_choice, &t, Direction::ToSender);
  } catch (const Error& e) {
    abort_session(stream, &t, Direction::ToSender, kErrProtocol, e);
  }

  raw = recv_message(stream, &t, Direction::ToReceiver);
  MsgReply reply = expect_message<MsgReply>(std::move(raw), "MsgReply");
  auto [recovered, keys] = receiver_recover(std::move(state), reply);
  state = std::move(recovered);

  raw = recv_message(stream, &t, Direction::ToReceiver);
  MsgSecrets sealed = expect_message<MsgSecrets>(std::move(raw), "MsgSecrets");

  run.secrets = open_secrets(state, sealed);
  run.choices = state.choices;
  run.session = session;
  run.state = std::move(state);
  run.report = account_run(t, session);
  return run;
}

LocalRun run_local(const SessionParams& session,
                   const std::vector<Secret>& secrets,
                   std::vector<std::uint32_t> choices, RandomSource& sender_rng,
                   RandomSource& receiver_rng, const Bigint& factor_override) {
  auto ends = make_pipe();
  std::unique_ptr<Stream>& sender_end = ends.first;
  std::unique_ptr<Stream>& receiver_end = ends.second;

  LocalRun result;
  std::exception_ptr sender_failure;
  std::thread sender_thread([&] {
    try {
      result.sender = run_sender(*sender_end, session, secrets, sender_rng);
    } catch (...) {
      sender_failure = std::current_exception();
      sender_end.reset();  // unblock the receiver
    }
  });

  std::exception_ptr receiver_failure;
  try {
    ReceiverExpectation expected{session.group, session.k, session.xs};
    result.receiver = run_receiver(*receiver_end, expected, std::move(choices),
                                   receiver_rng, factor_override);
  } catch (...) {
    receiver_failure = std::current_exception();
    receiver_end.reset();
  }

  sender_thread.join();
  // Receiver-side failures (choice errors, detection outcomes) are the
  // interesting ones; sender failures surface when the receiver side only
  // saw the broken pipe.
  if (receiver_failure) std::rethrow_exception(receiver_failure);
  if (sender_failure) std::rethrow_exception(sender_failure);
  return result;
}

}  // namespace knot
