#ifndef KNOT_ORACLE_HPP
#define KNOT_ORACLE_HPP

#include <cstdint>
#include <vector>

#include "knot/protocol.hpp"

namespace knot {
namespace oracle {

// Brute-force recomputation engine for tiny groups (p <= 10^4), used by
// the test suite to check protocol outputs against an implementation
// that shares no arithmetic with the protocol path: everything here is
// a lookup into a precomputed power table plus uint64 index arithmetic.

/// Full table of g^e mod p for e in [0, p-2].
struct TinyGroupTable {
  std::uint64_t p = 0;
  std::uint64_t g = 0;
  std::vector<std::uint64_t> powers;

  static TinyGroupTable build(std::uint64_t p, std::uint64_t g);

  // g^(e mod (p-1)) by table lookup.
  std::uint64_t power(std::uint64_t exponent) const {
    return powers[exponent % (p - 1)];
  }
};

// The unique e in [0, p-2] with g^e = y mod p, by linear scan.
// Throws Errc::param when y is not a nonzero residue or not a power of g.
std::uint64_t brute_dlog(std::uint64_t y, const TinyGroupTable& table);

// Reduce an arbitrary-precision value mod m by Horner over its big-endian
// bytes; keeps this module off the protocol's arithmetic entirely.
std::uint64_t reduce_mod(const Bigint& value, std::uint64_t m);

/// Nonce set of one run, as generated or injected.
struct RunNonces {
  Bigint na1;
  Bigint na2;
  Bigint nb1;
  Bigint nb2;
  Bigint nb3;
};

/// Every value a run produces, recomputed from first principles.
struct RunValues {
  std::uint64_t ma = 0;
  std::uint64_t mb = 0;
  std::vector<std::uint64_t> mjs;      // per choice
  std::vector<std::uint64_t> replies;  // per choice
  std::vector<std::uint64_t> keys_a;   // all n
  std::vector<std::uint64_t> keys_b;   // per choice
};

// Recomputes the full run on the table. Requires p <= 10^4 and the nonce
// divisibility structure (N_B3 = f * N_B2 with f | N_B1); throws
// Errc::param otherwise.
RunValues compute_run(const SessionParams& session, const RunNonces& nonces,
                      const std::vector<std::uint32_t>& choices);

// True iff the nonce structure holds and, at every chosen index, the
// sender key, the receiver key, and the closed form
// g^((N_A1 + sum(xs) - x_j) * N_B1 * N_A2) all coincide.
bool verify_key_equation(const SessionParams& session, const RunNonces& nonces,
                         const std::vector<std::uint32_t>& choices);

}  // namespace oracle
}  // namespace knot

#endif
