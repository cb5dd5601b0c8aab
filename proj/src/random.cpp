#include "gga/random.hpp"

#include <stdexcept>

namespace gga {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

RandomSource::RandomSource(std::uint64_t seed) : seed_(seed), engine_(seed) {}

RandomSource RandomSource::for_run(std::uint64_t base_seed, std::uint64_t k) {
  return RandomSource(splitmix64(base_seed ^ splitmix64(k + 1)));
}

double RandomSource::uniform() {
  return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
}

double RandomSource::uniform_open(double lo, double hi) {
  for (;;) {
    const double v = lo + (hi - lo) * uniform();
    if (v > lo && v < hi) return v;
  }
}

double RandomSource::normal() { return normal_(engine_); }

std::size_t RandomSource::index(std::size_t n) {
  if (n == 0) throw std::invalid_argument("RandomSource::index: empty range");
  std::uniform_int_distribution<std::size_t> dist(0, n - 1);
  return dist(engine_);
}

}  // namespace gga
