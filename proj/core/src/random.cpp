#include "qca/random.hpp"

#include <limits>

#include "qca/errors.hpp"

namespace qca {

std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  if (n == 0) {
    throw InputError("uniform_index: n must be positive");
  }
  // Rejection keeps the draw unbiased for every n; limit is a multiple of n.
  const std::uint64_t max = std::numeric_limits<std::uint64_t>::max();
  const std::uint64_t limit = max - max % n;
  for (;;) {
    const std::uint64_t r = rng();
    if (r < limit) {
      return r % n;
    }
  }
}

double uniform_unit(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream) {
  // splitmix64 finalizer over the combined word.
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace qca
