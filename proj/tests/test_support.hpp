#pragma once

// Shared generators for the test suites. Everything is seeded and portable so
// failures reproduce exactly.

#include <numeric>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/random.hpp"

namespace qca::test {

inline UpdateRule random_permutation_rule(std::size_t n, std::uint64_t seed) {
  std::vector<State> map(n);
  std::iota(map.begin(), map.end(), State{0});
  Rng rng(seed);
  portable_shuffle(rng, map);
  return UpdateRule(StateSpace(n), std::move(map));
}

inline UpdateRule random_function_rule(std::size_t n, std::uint64_t seed) {
  std::vector<State> map(n);
  Rng rng(seed);
  for (auto& successor : map) {
    successor = static_cast<State>(uniform_index(rng, n));
  }
  return UpdateRule(StateSpace(n), std::move(map));
}

inline UpdateRule cyclic_shift_rule(std::size_t n) {
  std::vector<State> map(n);
  for (std::size_t i = 0; i < n; ++i) {
    map[i] = static_cast<State>((i + 1) % n);
  }
  return UpdateRule(StateSpace(n), std::move(map));
}

inline UpdateRule identity_rule(std::size_t n) {
  std::vector<State> map(n);
  std::iota(map.begin(), map.end(), State{0});
  return UpdateRule(StateSpace(n), std::move(map));
}

}  // namespace qca::test
