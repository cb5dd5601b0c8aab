#pragma once

#include <cstdint>
#include <random>

namespace gga {

/// Deterministic pseudo-random source. One owner at a time; ensemble runs
/// obtain independent streams through `for_run`.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed);

  /// Stream for run index `k` derived from a base seed:
  /// splitmix64(base ^ splitmix64(k + 1)). Depends only on (base, k).
  static RandomSource for_run(std::uint64_t base_seed, std::uint64_t k);

  /// Uniform real in [0, 1), 53 random bits.
  double uniform();
  /// Uniform real in the open interval (lo, hi).
  double uniform_open(double lo, double hi);
  double normal();
  /// Uniform integer in [0, n). Requires n > 0.
  std::size_t index(std::size_t n);

  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace gga
