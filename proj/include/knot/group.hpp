#ifndef KNOT_GROUP_HPP
#define KNOT_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "knot/bigint.hpp"
#include "knot/rng.hpp"

namespace knot {

/// Multiplicative group of integers mod a safe prime p = 2q + 1, with g a
/// generator of the full order-(p-1) group (not the prime-order subgroup).
struct GroupParams {
  Bigint p;  // safe prime modulus
  Bigint q;  // (p - 1) / 2, prime
  Bigint g;  // generator of Z_p^*
};

// Smallest modulus accepted by validate_params; big enough for the
// reference trace. Production sizes are configured at generation time.
inline constexpr unsigned kMinModulus = 23;

inline constexpr unsigned kMinModulusBits = 5;
inline constexpr unsigned kMaxModulusBits = 4096;

/// Counts the exponentiations a cost report accounts for. Setup powers
/// (the two opening messages) and auxiliary powers inside a combined
/// computation do not pass a counter and stay invisible to it.
struct ExpCounter {
  std::uint64_t accounted = 0;
};

// base^(exponent mod (p-1)) mod p. Requires 0 < base < p and exponent >= 0.
// g has order p-1, so reducing the exponent first never changes the result
// and keeps cost independent of nonce magnitude.
Bigint mod_exp(const Bigint& base, const Bigint& exponent,
               const GroupParams& params, ExpCounter* counter = nullptr);

// Multiplicative inverse mod p. Requires 1 <= a < p.
Bigint mod_inv(const Bigint& a, const GroupParams& params);

// Trial division by every prime below 10^4 (exact for n < 10^8), then
// 40 Miller-Rabin rounds with bases derived deterministically from n.
bool is_probable_prime(const Bigint& n);

// Smallest g >= 2 with g^2 != 1 and g^q != 1 mod p, i.e. the first
// candidate generating all of Z_p^*.
Bigint find_generator(const Bigint& p, const Bigint& q);

// Random safe prime with exactly `bits` significant bits plus the first
// full-group generator. bits in [5, 4096]. Retries until success.
GroupParams generate_safe_prime(unsigned bits, RandomSource& rng);

// True iff p = 2q+1, both prime, p >= 23, and g generates the full group.
// Never throws.
bool validate_params(const GroupParams& candidate);

/// Parameter file: `p=`, `q=`, `g=` lines (decimal), optional
/// `xs=c1,c2,...` overriding the default index set {1..n}. Blank lines and
/// `#` comments are ignored.
struct ParamsFile {
  GroupParams group;
  std::optional<std::vector<Bigint>> xs;
};

ParamsFile parse_params(const std::string& text);
std::string render_params(const GroupParams& group,
                          const std::vector<Bigint>* xs = nullptr);
ParamsFile read_params_file(const std::string& path);
void write_params_file(const std::string& path, const GroupParams& group,
                       const std::vector<Bigint>* xs = nullptr);

}  // namespace knot

#endif
