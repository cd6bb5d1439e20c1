#ifndef KNOT_BIGINT_HPP
#define KNOT_BIGINT_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace knot {

using Bigint = mpz_class;

// Minimal big-endian bytes; empty vector encodes zero.
std::vector<std::uint8_t> to_bytes_be(const Bigint& value);
Bigint from_bytes_be(std::span<const std::uint8_t> bytes);

std::size_t bit_length(const Bigint& value);

std::string to_dec(const Bigint& value);
// Strict decimal parse (optional leading '-', digits only). Throws Errc::param.
Bigint from_dec(const std::string& text);

// Throws Errc::param when value is negative or does not fit.
std::uint64_t to_u64(const Bigint& value);

}  // namespace knot

#endif
