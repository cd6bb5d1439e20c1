// knot: k-out-of-n oblivious transfer over a safe-prime Diffie-Hellman
// group. Subcommands cover parameter generation, the sender and receiver
// endpoints over TCP, an in-process local run, a fixed-nonce reference
// trace, and the cost model.
//
// Exit codes:
//   0  success
//   1  usage or invalid input (flags, parameter file, sizes, choices)
//   2  I/O or connection failure
//   3  malformed frame on the wire
//   4  protocol violation (phase, arity, handshake mismatch, peer abort)
//   5  a chosen secret failed its commitment check
//   6  duplicate commitments (same-message attack detected)

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "knot/errors.hpp"
#include "knot/session.hpp"

namespace {

using namespace knot;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::param:
    case Errc::choice:
      return 1;
    case Errc::io:
      return 2;
    case Errc::wire_truncated:
    case Errc::wire_bad_magic:
    case Errc::wire_bad_version:
    case Errc::wire_unknown_type:
    case Errc::wire_non_canonical:
    case Errc::wire_trailing:
    case Errc::wire_oversize:
    case Errc::wire_bad_value:
      return 3;
    case Errc::state:
    case Errc::protocol:
    case Errc::accounting:
    case Errc::remote_abort:
      return 4;
    case Errc::verify_failed:
      return 5;
    case Errc::same_message:
      return 6;
  }
  return 4;
}

// ---------------------------------------------------------------------
// secrets files: length-prefixed binary records by default, newline-
// delimited lines with --text.

std::vector<Secret> read_secrets_file(const std::string& path, bool text) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw Error(Errc::io, "cannot open secrets file: " + path);
  }
  std::vector<Secret> out;
  if (text) {
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) {
        throw Error(Errc::param, "empty line in text secrets file");
      }
      out.push_back(Secret::from_string(line));
    }
  } else {
    while (true) {
      std::uint8_t head[4];
      in.read(reinterpret_cast<char*>(head), 4);
      if (in.gcount() == 0 && in.eof()) break;
      if (in.gcount() != 4) {
        throw Error(Errc::io, "truncated record header in " + path);
      }
      const std::uint32_t len = (std::uint32_t{head[0]} << 24) |
                                (std::uint32_t{head[1]} << 16) |
                                (std::uint32_t{head[2]} << 8) |
                                std::uint32_t{head[3]};
      if (len == 0) {
        throw Error(Errc::param, "zero-length record in " + path);
      }
      std::vector<std::uint8_t> payload(len);
      in.read(reinterpret_cast<char*>(payload.data()), len);
      if (static_cast<std::uint32_t>(in.gcount()) != len) {
        throw Error(Errc::io, "truncated record body in " + path);
      }
      out.push_back(Secret(std::move(payload)));
    }
  }
  if (out.empty()) {
    throw Error(Errc::param, "secrets file is empty: " + path);
  }
  return out;
}

void write_secrets_file(const std::string& path,
                        const std::vector<Secret>& secrets, bool text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw Error(Errc::io, "cannot write output file: " + path);
  }
  for (const Secret& secret : secrets) {
    const auto& payload = secret.payload();
    if (text) {
      out.write(reinterpret_cast<const char*>(payload.data()),
                static_cast<std::streamsize>(payload.size()));
      out.put('\n');
    } else {
      const std::uint32_t len = static_cast<std::uint32_t>(payload.size());
      const std::uint8_t head[4] = {static_cast<std::uint8_t>(len >> 24),
                                    static_cast<std::uint8_t>(len >> 16),
                                    static_cast<std::uint8_t>(len >> 8),
                                    static_cast<std::uint8_t>(len)};
      out.write(reinterpret_cast<const char*>(head), 4);
      out.write(reinterpret_cast<const char*>(payload.data()),
                static_cast<std::streamsize>(payload.size()));
    }
  }
  if (!out.flush()) {
    throw Error(Errc::io, "write failed: " + path);
  }
}

// ---------------------------------------------------------------------

GroupParams load_validated_group(const std::string& path,
                                 std::optional<std::vector<Bigint>>* xs_out) {
  ParamsFile file = read_params_file(path);
  if (!validate_params(file.group)) {
    throw Error(Errc::param, "parameter file fails validation: " + path);
  }
  if (xs_out != nullptr) *xs_out = std::move(file.xs);
  return file.group;
}

SessionParams make_session(const GroupParams& group,
                           std::optional<std::vector<Bigint>> xs,
                           std::uint32_t n, std::uint32_t k) {
  SessionParams session;
  session.group = group;
  session.xs = xs ? std::move(*xs) : default_index_set(n);
  session.k = k;
  if (session.n() != n) {
    throw Error(Errc::param,
                "index set size " + std::to_string(session.n()) +
                    " does not match the secret count " + std::to_string(n));
  }
  validate_session(session);
  return session;
}

std::vector<std::uint32_t> parse_choices(const std::vector<std::string>& raw) {
  std::vector<std::uint32_t> out;
  for (const std::string& chunk : raw) {
    std::stringstream stream(chunk);
    std::string item;
    while (std::getline(stream, item, ',')) {
      if (item.empty()) {
        throw Error(Errc::choice, "empty choice entry");
      }
      unsigned long value = 0;
      try {
        std::size_t used = 0;
        value = std::stoul(item, &used);
        if (used != item.size()) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        throw Error(Errc::choice, "invalid choice: " + item);
      }
      if (value < 1 || value > 0xFFFFFFFFul) {
        throw Error(Errc::choice, "choice out of range (indices are 1-based)");
      }
      out.push_back(static_cast<std::uint32_t>(value));
    }
  }
  if (out.empty()) {
    throw Error(Errc::choice, "no choices given");
  }
  return out;
}

void print_run_costs(const char* side, const CostReport& report,
                     std::uint64_t measured) {
  std::cout << render_kv(report) << "\n";
  std::cout << side << " measured exponentiations: " << measured
            << (measured == (std::string(side) == "sender"
                                 ? report.sender_exps
                                 : report.receiver_exps)
                    ? " (matches the accounting)"
                    : " (MISMATCH)")
            << "\n";
}

// ---------------------------------------------------------------------
// subcommands

int cmd_params(unsigned bits, const std::string& out_path) {
  SystemRandom rng;
  const GroupParams group = generate_safe_prime(bits, rng);
  write_params_file(out_path, group);
  std::cout << "wrote " << out_path << " (p: " << bit_length(group.p)
            << " bits, g=" << to_dec(group.g) << ")\n";
  return 0;
}

int cmd_send(const std::string& params_path, const std::string& secrets_path,
             std::uint32_t k, const std::string& listen, bool text,
             std::optional<std::uint64_t> seed, bool insecure_ok) {
  if (seed && !insecure_ok) {
    throw Error(Errc::param,
                "--seed on a networked run needs --insecure-deterministic");
  }
  std::optional<std::vector<Bigint>> xs;
  const GroupParams group = load_validated_group(params_path, &xs);
  const std::vector<Secret> secrets = read_secrets_file(secrets_path, text);
  const SessionParams session =
      make_session(group, std::move(xs),
                   static_cast<std::uint32_t>(secrets.size()), k);

  auto [host, port] = parse_endpoint(listen);
  TcpListener listener(host, port);
  std::cout << "listening on " << host << ":" << listener.port() << std::endl;
  auto stream = listener.accept();

  std::unique_ptr<RandomSource> rng;
  if (seed) {
    rng = std::make_unique<SeededRandom>(*seed);
  } else {
    rng = std::make_unique<SystemRandom>();
  }
  SenderRun run = run_sender(*stream, session, secrets, *rng);
  std::cout << "transfer complete: n=" << session.n() << " k=" << session.k
            << "\n";
  print_run_costs("sender", run.report, run.state.exps.accounted);
  return 0;
}

int cmd_recv(const std::string& params_path, const std::string& connect,
             const std::vector<std::string>& choices_raw,
             std::optional<std::uint32_t> k, const std::string& out_path,
             bool text, std::optional<std::uint64_t> seed, bool insecure_ok,
             const std::string& factor_text) {
  if (seed && !insecure_ok) {
    throw Error(Errc::param,
                "--seed on a networked run needs --insecure-deterministic");
  }
  std::optional<std::vector<Bigint>> xs;
  const GroupParams group = load_validated_group(params_path, &xs);
  std::vector<std::uint32_t> choices = parse_choices(choices_raw);
  const std::uint32_t want_k =
      k ? *k : static_cast<std::uint32_t>(choices.size());
  if (choices.size() != want_k) {
    throw Error(Errc::choice, "--k disagrees with the number of choices");
  }
  Bigint factor = factor_text.empty() ? Bigint(0) : from_dec(factor_text);

  auto [host, port] = parse_endpoint(connect);
  auto stream = TcpStream::connect(host, port);

  std::unique_ptr<RandomSource> rng;
  if (seed) {
    rng = std::make_unique<SeededRandom>(*seed);
  } else {
    rng = std::make_unique<SystemRandom>();
  }
  ReceiverExpectation expected{group, want_k, std::move(xs)};
  ReceiverRun run =
      run_receiver(*stream, expected, std::move(choices), *rng, factor);

  write_secrets_file(out_path, run.secrets, text);
  for (const std::uint32_t index : run.choices) {
    std::cout << "index " << index << ": commitment verified\n";
  }
  std::cout << "recovered " << run.secrets.size() << " secrets into "
            << out_path << "\n";
  print_run_costs("receiver", run.report, run.state.exps.accounted);
  return 0;
}

int cmd_local(const std::string& params_path, const std::string& secrets_path,
              const std::vector<std::string>& choices_raw,
              std::optional<std::uint32_t> k, const std::string& out_path,
              bool text, std::optional<std::uint64_t> seed,
              const std::string& factor_text) {
  std::optional<std::vector<Bigint>> xs;
  const GroupParams group = load_validated_group(params_path, &xs);
  const std::vector<Secret> secrets = read_secrets_file(secrets_path, text);
  std::vector<std::uint32_t> choices = parse_choices(choices_raw);
  const std::uint32_t want_k =
      k ? *k : static_cast<std::uint32_t>(choices.size());
  const SessionParams session =
      make_session(group, std::move(xs),
                   static_cast<std::uint32_t>(secrets.size()), want_k);
  Bigint factor = factor_text.empty() ? Bigint(0) : from_dec(factor_text);

  std::unique_ptr<RandomSource> sender_rng, receiver_rng;
  if (seed) {
    sender_rng = std::make_unique<SeededRandom>(*seed);
    receiver_rng = std::make_unique<SeededRandom>(*seed ^ 0x9E3779B97F4A7C15ull);
  } else {
    sender_rng = std::make_unique<SystemRandom>();
    receiver_rng = std::make_unique<SystemRandom>();
  }

  LocalRun run = run_local(session, secrets, std::move(choices), *sender_rng,
                           *receiver_rng, factor);
  for (const std::uint32_t index : run.receiver.choices) {
    std::cout << "index " << index << ": commitment verified\n";
  }
  if (!out_path.empty()) {
    write_secrets_file(out_path, run.receiver.secrets, text);
    std::cout << "recovered " << run.receiver.secrets.size()
              << " secrets into " << out_path << "\n";
  }
  print_run_costs("sender", run.sender.report,
                  run.sender.state.exps.accounted);
  print_run_costs("receiver", run.receiver.report,
                  run.receiver.state.exps.accounted);
  return 0;
}

int cmd_costs(std::uint32_t n, std::uint32_t k) {
  const CostReport direct = formula_direct(n, k);
  const CostReport naive = naive_baseline(n, k);
  std::cout << render_comparison(direct, naive);
  std::cout << render_kv(direct) << "\n";
  std::cout << render_kv(naive) << "\n";
  return 0;
}

// Fixed-nonce reference trace. Every value is checked against the
// expected trace; any difference prints a diff and fails.
int cmd_demo() {
  SessionParams session;
  session.group = GroupParams{23, 11, 5};
  session.xs = default_index_set(5);
  session.k = 2;

  std::vector<Secret> secrets;
  for (int i = 1; i <= 5; ++i) {
    secrets.push_back(Secret::from_string("secret-" + std::to_string(i)));
  }

  // Draw order: sender N_A1, N_A2; receiver m (N_B1 = factor*m), N_B2.
  FixedRandom sender_rng{4, 8};
  FixedRandom receiver_rng{5, 6};
  LocalRun run =
      run_local(session, secrets, {3, 5}, sender_rng, receiver_rng);

  const MsgA msg_a = std::get<MsgA>(decode(run.sender.transcript.frames()[1].bytes));
  const MsgChoice choice =
      std::get<MsgChoice>(decode(run.sender.transcript.frames()[2].bytes));
  const MsgReply reply =
      std::get<MsgReply>(decode(run.sender.transcript.frames()[3].bytes));

  std::ostringstream out;
  out << "reference run: 2-of-5 transfer, p=23 g=5 xs={1,2,3,4,5}\n";
  out << "N_A1 = " << to_dec(run.sender.state.nonce_a1) << "\n";
  out << "M_A  = " << to_dec(msg_a.ma) << "\n";
  out << "choices = {3, 5}\n";
  out << "N_B1 = " << to_dec(run.receiver.state.nonce_b1)
      << "  N_B2 = " << to_dec(run.receiver.state.nonce_b2)
      << "  N_B3 = " << to_dec(run.receiver.state.nonce_b3)
      << "  factor = " << to_dec(run.receiver.state.factor) << "\n";
  for (std::size_t j = 0; j < choice.mjs.size(); ++j) {
    out << "M_" << (j + 1) << "  = " << to_dec(choice.mjs[j]) << "\n";
  }
  out << "M_B  = " << to_dec(choice.mb) << "\n";
  out << "N_A2 = " << to_dec(run.sender.state.nonce_a2) << "\n";
  out << "K_A  = [";
  for (std::size_t i = 0; i < run.sender.state.keys.size(); ++i) {
    out << (i ? ", " : "") << to_dec(run.sender.state.keys[i]);
  }
  out << "]\n";
  for (std::size_t j = 0; j < reply.replies.size(); ++j) {
    out << "reply_" << (j + 1) << " = " << to_dec(reply.replies[j]) << "\n";
  }
  out << "K_B  = [";
  for (std::size_t j = 0; j < run.receiver.state.keys.size(); ++j) {
    out << (j ? ", " : "") << to_dec(run.receiver.state.keys[j]);
  }
  out << "]\n";
  out << "recovered: ";
  for (std::size_t j = 0; j < run.receiver.secrets.size(); ++j) {
    const auto& payload = run.receiver.secrets[j].payload();
    out << (j ? ", " : "")
        << std::string(payload.begin(), payload.end());
  }
  out << "\n";
  out << render_kv(run.sender.report) << "\n";
  out << "measured: sender_exps=" << run.sender.state.exps.accounted
      << " receiver_exps=" << run.receiver.state.exps.accounted << "\n";

  const std::string expected =
      "reference run: 2-of-5 transfer, p=23 g=5 xs={1,2,3,4,5}\n"
      "N_A1 = 4\n"
      "M_A  = 7\n"
      "choices = {3, 5}\n"
      "N_B1 = 10  N_B2 = 6  N_B3 = 12  factor = 2\n"
      "M_1  = 13\n"
      "M_2  = 4\n"
      "M_B  = 9\n"
      "N_A2 = 8\n"
      "K_A  = [9, 6, 4, 18, 12]\n"
      "reply_1 = 2\n"
      "reply_2 = 9\n"
      "K_B  = [4, 12]\n"
      "recovered: secret-3, secret-5\n"
      "mode=k-of-n n=5 k=2 sender_exps=7 receiver_exps=4 elements=11 "
      "bytes=361\n"
      "measured: sender_exps=7 receiver_exps=4\n";

  std::cout << out.str();
  if (out.str() != expected) {
    std::cerr << "trace mismatch; expected:\n" << expected;
    return 4;
  }
  std::cout << "trace matches the reference: OK\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-out-of-n oblivious transfer over a safe-prime group"};
  app.require_subcommand(1);

  // params
  auto* params_cmd =
      app.add_subcommand("params", "generate and write group parameters");
  unsigned bits = 512;
  std::string out_path;
  params_cmd->add_option("--bits", bits, "modulus size in bits [5, 4096]");
  params_cmd->add_option("--out", out_path, "output file")->required();

  // send
  auto* send_cmd = app.add_subcommand("send", "serve one transfer as sender");
  std::string send_params, send_secrets, listen;
  std::uint32_t send_k = 1;
  bool send_text = false, send_insecure = false;
  std::optional<std::uint64_t> send_seed;
  send_cmd->add_option("--params", send_params, "parameter file")->required();
  send_cmd->add_option("--secrets", send_secrets, "secrets file")->required();
  send_cmd->add_option("--k", send_k, "number of secrets to transfer")
      ->required();
  send_cmd->add_option("--listen", listen, "host:port to listen on")
      ->required();
  send_cmd->add_flag("--text", send_text, "newline-delimited secrets file");
  send_cmd->add_option("--seed", send_seed,
                       "deterministic nonces (testing only)");
  send_cmd->add_flag("--insecure-deterministic", send_insecure,
                     "allow --seed on a networked run");

  // recv
  auto* recv_cmd = app.add_subcommand("recv", "fetch chosen secrets");
  std::string recv_params, connect, recv_out, recv_factor;
  std::vector<std::string> recv_choices;
  std::optional<std::uint32_t> recv_k;
  bool recv_text = false, recv_insecure = false;
  std::optional<std::uint64_t> recv_seed;
  recv_cmd->add_option("--params", recv_params, "parameter file")->required();
  recv_cmd->add_option("--choices", recv_choices,
                       "comma-separated 1-based indices")
      ->required();
  recv_cmd->add_option("--k", recv_k, "number of secrets to transfer");
  recv_cmd->add_option("--connect", connect, "sender host:port")->required();
  recv_cmd->add_option("--out", recv_out, "output file for recovered secrets")
      ->required();
  recv_cmd->add_flag("--text", recv_text, "write newline-delimited output");
  recv_cmd->add_option("--seed", recv_seed,
                       "deterministic nonces (testing only)");
  recv_cmd->add_flag("--insecure-deterministic", recv_insecure,
                     "allow --seed on a networked run");
  recv_cmd->add_option("--factor", recv_factor,
                       "override the nonce factor (default max(k, 2))");

  // local
  auto* local_cmd =
      app.add_subcommand("local", "run both parties in one process");
  std::string local_params, local_secrets, local_out, local_factor;
  std::vector<std::string> local_choices;
  std::optional<std::uint32_t> local_k;
  bool local_text = false;
  std::optional<std::uint64_t> local_seed;
  local_cmd->add_option("--params", local_params, "parameter file")
      ->required();
  local_cmd->add_option("--secrets", local_secrets, "secrets file")
      ->required();
  local_cmd->add_option("--choices", local_choices,
                        "comma-separated 1-based indices")
      ->required();
  local_cmd->add_option("--k", local_k, "number of secrets to transfer");
  local_cmd->add_option("--out", local_out, "output file for recovered secrets");
  local_cmd->add_flag("--text", local_text, "newline-delimited secrets files");
  local_cmd->add_option("--seed", local_seed, "deterministic nonces");
  local_cmd->add_option("--factor", local_factor,
                        "override the nonce factor (default max(k, 2))");

  // demo
  auto* demo_cmd =
      app.add_subcommand("demo", "fixed-nonce reference trace on p=23");

  // costs
  auto* costs_cmd =
      app.add_subcommand("costs", "compare direct and naive k-fold costs");
  std::uint32_t cost_n = 5, cost_k = 2;
  costs_cmd->add_option("--n", cost_n, "number of secrets")->required();
  costs_cmd->add_option("--k", cost_k, "number transferred")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (params_cmd->parsed()) return cmd_params(bits, out_path);
    if (send_cmd->parsed()) {
      return cmd_send(send_params, send_secrets, send_k, listen, send_text,
                      send_seed, send_insecure);
    }
    if (recv_cmd->parsed()) {
      return cmd_recv(recv_params, connect, recv_choices, recv_k, recv_out,
                      recv_text, recv_seed, recv_insecure, recv_factor);
    }
    if (local_cmd->parsed()) {
      return cmd_local(local_params, local_secrets, local_choices, local_k,
                       local_out, local_text, local_seed, local_factor);
    }
    if (demo_cmd->parsed()) return cmd_demo();
    if (costs_cmd->parsed()) return cmd_costs(cost_n, cost_k);
  } catch (const Error& e) {
    std::cerr << "error (" << errc_name(e.code()) << "): " << e.what()
              << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 4;
  }
  return 1;
}
