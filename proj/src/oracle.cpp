#include "knot/oracle.hpp"

#include "knot/errors.hpp"

namespace knot {
namespace oracle {

namespace {

constexpr std::uint64_t kMaxTinyPrime = 10000;

std::uint64_t to_tiny(const Bigint& value, const char* what) {
  if (value < 1 || value > kMaxTinyPrime) {
    throw Error(Errc::param, std::string(what) + " outside tiny-group range");
  }
  return to_u64(value);
}

}  // namespace

TinyGroupTable TinyGroupTable::build(std::uint64_t p, std::uint64_t g) {
  if (p < 3 || p > kMaxTinyPrime || g < 2 || g >= p) {
    throw Error(Errc::param, "table wants 3 <= p <= 10^4 and 2 <= g < p");
  }
  TinyGroupTable table;
  table.p = p;
  table.g = g;
  table.powers.resize(p - 1);
  std::uint64_t value = 1;
  for (std::uint64_t e = 0; e + 1 < p; ++e) {
    table.powers[e] = value;
    value = value * g % p;  // p <= 10^4 so products stay far below 2^64
  }
  return table;
}

std::uint64_t brute_dlog(std::uint64_t y, const TinyGroupTable& table) {
  if (y == 0 || y >= table.p) {
    throw Error(Errc::param, "value outside [1, p-1]");
  }
  for (std::uint64_t e = 0; e < table.powers.size(); ++e) {
    if (table.powers[e] == y) return e;
  }
  throw Error(Errc::param, "value is not a power of g");
}

std::uint64_t reduce_mod(const Bigint& value, std::uint64_t m) {
  if (value < 0) {
    throw Error(Errc::param, "negative value");
  }
  std::uint64_t r = 0;
  for (const std::uint8_t byte : to_bytes_be(value)) {
    r = (r * 256 + byte) % m;
  }
  return r;
}

RunValues compute_run(const SessionParams& session, const RunNonces& nonces,
                      const std::vector<std::uint32_t>& choices) {
  const std::uint64_t p = to_tiny(session.group.p, "modulus");
  const std::uint64_t g = to_tiny(session.group.g, "generator");
  const TinyGroupTable table = TinyGroupTable::build(p, g);
  const std::uint64_t order = p - 1;

  // Nonce structure first: factor = N_B3 / N_B2 must be exact and must
  // divide N_B1.
  if (nonces.nb2 < 1 || nonces.nb3 % nonces.nb2 != 0) {
    throw Error(Errc::param, "N_B3 is not a multiple of N_B2");
  }
  const Bigint factor = nonces.nb3 / nonces.nb2;
  if (nonces.nb1 % factor != 0) {
    throw Error(Errc::param, "factor does not divide N_B1");
  }
  const Bigint blind_exp = nonces.nb1 / factor;  // N_B1 N_B2 / N_B3

  const std::uint64_t na1 = reduce_mod(nonces.na1, order);
  const std::uint64_t na2 = reduce_mod(nonces.na2, order);
  const std::uint64_t nb1 = reduce_mod(nonces.nb1, order);
  const std::uint64_t m = reduce_mod(blind_exp, order);
  const std::uint64_t f = reduce_mod(factor, order);

  std::uint64_t xsum = 0;
  std::vector<std::uint64_t> xs;
  xs.reserve(session.xs.size());
  for (const Bigint& x : session.xs) {
    const std::uint64_t xv = reduce_mod(x, order);
    xs.push_back(xv);
    xsum = (xsum + xv) % order;
  }
  const std::uint64_t exp_sum = (na1 + xsum) % order;

  RunValues values;
  values.ma = table.power(exp_sum);
  values.mb = table.power(nb1);

  // Sender keys: K_Aj = M_B^((E - x_j) N_A2) with E = N_A1 + sum(xs).
  const std::uint64_t dlog_mb = brute_dlog(values.mb, table);
  for (const std::uint64_t x : xs) {
    const std::uint64_t diff = (exp_sum + order - x) % order;
    values.keys_a.push_back(table.power(dlog_mb * diff % order * na2 % order));
  }

  for (const std::uint32_t choice : choices) {
    if (choice < 1 || choice > xs.size()) {
      throw Error(Errc::param, "choice outside [1, n]");
    }
    const std::uint64_t diff = (exp_sum + order - xs[choice - 1]) % order;
    const std::uint64_t mj = table.power(diff * m % order);
    const std::uint64_t reply = table.power(brute_dlog(mj, table) * na2 % order);
    const std::uint64_t key_b = table.power(brute_dlog(reply, table) * f % order);
    values.mjs.push_back(mj);
    values.replies.push_back(reply);
    values.keys_b.push_back(key_b);
  }
  return values;
}

bool verify_key_equation(const SessionParams& session, const RunNonces& nonces,
                         const std::vector<std::uint32_t>& choices) {
  RunValues values;
  try {
    values = compute_run(session, nonces, choices);
  } catch (const Error&) {
    return false;  // broken nonce structure or out-of-range input
  }

  const std::uint64_t p = to_u64(session.group.p);
  const std::uint64_t order = p - 1;
  const std::uint64_t na1 = reduce_mod(nonces.na1, order);
  const std::uint64_t na2 = reduce_mod(nonces.na2, order);
  const std::uint64_t nb1 = reduce_mod(nonces.nb1, order);
  const TinyGroupTable table =
      TinyGroupTable::build(p, to_u64(session.group.g));

  std::uint64_t xsum = 0;
  for (const Bigint& x : session.xs) {
    xsum = (xsum + reduce_mod(x, order)) % order;
  }

  for (std::size_t j = 0; j < choices.size(); ++j) {
    const std::uint64_t x = reduce_mod(session.xs[choices[j] - 1], order);
    const std::uint64_t diff = (na1 + xsum + order - x) % order;
    // Closed form g^((E - x_j) N_B1 N_A2).
    const std::uint64_t closed =
        table.power(diff * nb1 % order * na2 % order);
    if (values.keys_a[choices[j] - 1] != values.keys_b[j]) return false;
    if (values.keys_b[j] != closed) return false;
  }
  return true;
}

}  // namespace oracle
}  // namespace knot
