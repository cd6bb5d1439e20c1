#ifndef KNOT_RNG_HPP
#define KNOT_RNG_HPP

#include <cstdint>
#include <deque>
#include <initializer_list>

#include "knot/bigint.hpp"

namespace knot {

/// Source of random integers for nonce and parameter generation.
/// Protocol operations draw through this interface only, so a scripted
/// source can pin every nonce in a test run.
class RandomSource {
 public:
  virtual ~RandomSource() = default;

  // Uniform draw from the inclusive range [lo, hi]. Requires lo <= hi.
  virtual Bigint uniform(const Bigint& lo, const Bigint& hi) = 0;
};

/// OS-entropy seeded generator for real runs.
class SystemRandom final : public RandomSource {
 public:
  SystemRandom();
  Bigint uniform(const Bigint& lo, const Bigint& hi) override;

 private:
  gmp_randclass state_;
};

/// Reproducible stream from a 64-bit seed. Test and demo use only; a
/// predictable nonce stream voids both privacy guarantees.
class SeededRandom final : public RandomSource {
 public:
  explicit SeededRandom(std::uint64_t seed);
  Bigint uniform(const Bigint& lo, const Bigint& hi) override;

 private:
  gmp_randclass state_;
};

/// Returns a scripted sequence of values; each draw must fall inside the
/// requested range or the source throws. Exists so tests can inject exact
/// nonces through the same path real runs use.
class FixedRandom final : public RandomSource {
 public:
  FixedRandom() = default;
  FixedRandom(std::initializer_list<Bigint> values);
  explicit FixedRandom(std::deque<Bigint> values);

  void push(const Bigint& value);
  std::size_t remaining() const { return values_.size(); }

  Bigint uniform(const Bigint& lo, const Bigint& hi) override;

 private:
  std::deque<Bigint> values_;
};

}  // namespace knot

#endif
