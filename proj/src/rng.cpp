#include "mdkit/rng.hpp"

#include <cassert>
#include <cmath>

namespace mdkit {

namespace {
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * kTwoPowMinus53; }

double Rng::uniform_nonzero() {
  return static_cast<double>((next() >> 11) + 1) * kTwoPowMinus53;
}

std::uint64_t Rng::below(std::uint64_t bound) {
  assert(bound > 0);
  // Reject the partial top block so every residue is equally likely.
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t r;
  do {
    r = next();
  } while (r >= limit);
  return r % bound;
}

double Rng::exponential() { return -std::log(uniform_nonzero()); }

}  // namespace mdkit
