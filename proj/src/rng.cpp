#include "knot/rng.hpp"

#include <random>
#include <utility>

#include "knot/errors.hpp"

namespace knot {

namespace {

Bigint draw_in_range(gmp_randclass& state, const Bigint& lo, const Bigint& hi) {
  if (lo > hi) {
    throw Error(Errc::param, "empty range for uniform draw");
  }
  Bigint span = hi - lo + 1;
  return state.get_z_range(span) + lo;
}

}  // namespace

SystemRandom::SystemRandom() : state_(gmp_randinit_mt) {
  std::random_device device;
  Bigint seed = 0;
  for (int i = 0; i < 8; ++i) {
    seed <<= 32;
    seed += device();
  }
  state_.seed(seed);
}

Bigint SystemRandom::uniform(const Bigint& lo, const Bigint& hi) {
  return draw_in_range(state_, lo, hi);
}

SeededRandom::SeededRandom(std::uint64_t seed) : state_(gmp_randinit_mt) {
  Bigint s = Bigint(static_cast<unsigned long>(seed >> 32));
  s <<= 32;
  s += static_cast<unsigned long>(seed & 0xFFFFFFFFu);
  state_.seed(s);
}

Bigint SeededRandom::uniform(const Bigint& lo, const Bigint& hi) {
  return draw_in_range(state_, lo, hi);
}

FixedRandom::FixedRandom(std::initializer_list<Bigint> values)
    : values_(values) {}

FixedRandom::FixedRandom(std::deque<Bigint> values)
    : values_(std::move(values)) {}

void FixedRandom::push(const Bigint& value) { values_.push_back(value); }

Bigint FixedRandom::uniform(const Bigint& lo, const Bigint& hi) {
  if (values_.empty()) {
    throw Error(Errc::param, "scripted random source exhausted");
  }
  Bigint value = values_.front();
  values_.pop_front();
  if (value < lo || value > hi) {
    throw Error(Errc::param, "scripted value " + to_dec(value) +
                                 " outside [" + to_dec(lo) + ", " +
                                 to_dec(hi) + "]");
  }
  return value;
}

}  // namespace knot
