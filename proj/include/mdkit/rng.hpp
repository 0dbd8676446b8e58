#pragma once

#include <cstdint>
#include <random>

namespace mdkit {

/// Seeded 64-bit Mersenne Twister (std::mt19937_64). The engine's output
/// sequence is fixed by the C++ standard; the conversions below use only
/// integer arithmetic and exact scaling so that draws are identical on
/// every platform, unlike the std:: distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform on [0, 1) with 53 random bits.
  double uniform();

  /// Uniform on (0, 1].
  double uniform_nonzero();

  /// Uniform integer in [0, bound). `bound` must be positive.
  std::uint64_t below(std::uint64_t bound);

  /// Standard exponential variate.
  double exponential();

 private:
  std::mt19937_64 engine_;
};

}  // namespace mdkit
