#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace qca {

/// The library's random engine. std::mt19937_64 is named, seedable, and
/// portable: the standard pins its output sequence, so seeded experiments
/// reproduce bit-for-bit across platforms. The std::*_distribution adaptors
/// do NOT share that guarantee, which is why the helpers below exist.
using Rng = std::mt19937_64;

/// Unbiased integer in [0, n) by rejection sampling on raw engine output.
std::uint64_t uniform_index(Rng& rng, std::uint64_t n);

/// Uniform double in [0, 1) built from the top 53 bits of one engine draw.
double uniform_unit(Rng& rng);

/// Seed for an independent substream (splitmix64 over seed and stream tag).
/// Sharded computations derive one substream per shard and merge in shard
/// order so results do not depend on scheduling.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t stream);

/// Fisher-Yates shuffle driven by uniform_index (std::shuffle is not portable).
template <typename T>
void portable_shuffle(Rng& rng, std::vector<T>& values) {
  for (std::uint64_t i = values.size(); i > 1; --i) {
    const std::uint64_t j = uniform_index(rng, i);
    std::swap(values[i - 1], values[j]);
  }
}

}  // namespace qca
