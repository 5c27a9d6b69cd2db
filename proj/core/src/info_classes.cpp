#include "qca/info_classes.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "qca/errors.hpp"

namespace qca {

namespace {
constexpr std::uint32_t kNoClass = 0xffffffffu;
}  // namespace

InfoClassPartition compute_info_classes(const UpdateRule& rule) {
  const std::size_t n = rule.size();
  const auto map = rule.map();

  // Start from the kernel of the identity (singletons) and refine along
  // successor-class keys: after t rounds the classes are exactly the kernel of
  // the t-fold map. The sequence coarsens monotonically and is stable as soon
  // as one round changes nothing.
  std::vector<std::uint32_t> classes(n);
  std::iota(classes.begin(), classes.end(), 0u);
  std::vector<std::uint32_t> next(n);
  std::vector<std::uint32_t> renumber;
  std::uint64_t rounds = 0;

  for (;;) {
    renumber.assign(n, kNoClass);
    std::uint32_t fresh = 0;
    for (std::size_t s = 0; s < n; ++s) {
      const std::uint32_t key = classes[map[s]];
      if (renumber[key] == kNoClass) {
        renumber[key] = fresh++;
      }
      next[s] = renumber[key];
    }
    if (next == classes) {
      break;
    }
    classes.swap(next);
    ++rounds;
  }

  InfoClassPartition partition;
  partition.class_of = std::move(classes);
  partition.merge_time_bound = rounds;
  std::uint32_t class_count = 0;
  for (std::uint32_t id : partition.class_of) {
    class_count = std::max(class_count, id + 1);
  }
  partition.representatives.assign(class_count, 0);
  std::vector<bool> seen(class_count, false);
  for (State s = 0; s < n; ++s) {
    const std::uint32_t id = partition.class_of[s];
    if (!seen[id]) {
      seen[id] = true;
      partition.representatives[id] = s;  // first hit is the minimal member
    }
  }
  return partition;
}

QuotientRule::QuotientRule(UpdateRule rule) : rule_(std::move(rule)) {
  if (!rule_.is_invertible()) {
    throw ConsistencyError("QuotientRule: quotient dynamics must be a bijection");
  }
}

QuotientRule quotient_dynamics(const UpdateRule& rule, const InfoClassPartition& partition) {
  if (partition.class_of.size() != rule.size()) {
    throw ConsistencyError("quotient_dynamics: partition covers " +
                           std::to_string(partition.class_of.size()) +
                           " states, rule has " + std::to_string(rule.size()));
  }
  // The quotient is only well defined for the partition actually induced by
  // this rule, so recompute and compare.
  const InfoClassPartition expected = compute_info_classes(rule);
  if (expected.class_of != partition.class_of ||
      expected.representatives != partition.representatives) {
    throw ConsistencyError(
        "quotient_dynamics: the partition was not derived from this rule");
  }

  const std::size_t k = partition.class_count();
  std::vector<State> quotient_map(k);
  for (std::size_t c = 0; c < k; ++c) {
    const State representative = partition.representatives[c];
    quotient_map[c] = partition.class_of[rule.map()[representative]];
  }
  return QuotientRule(UpdateRule(StateSpace(k), std::move(quotient_map)));
}

PermutationUnitary class_unitary(const UpdateRule& rule) {
  const InfoClassPartition partition = compute_info_classes(rule);
  const QuotientRule quotient = quotient_dynamics(rule, partition);
  return lift_to_unitary(quotient.rule());
}

std::vector<double> entropy_profile(const UpdateRule& rule, std::uint64_t t_max) {
  const std::size_t n = rule.size();
  const auto map = rule.map();
  std::vector<double> profile;
  profile.reserve(t_max + 1);

  std::vector<char> image(n, 1);
  std::vector<char> next(n);
  std::size_t image_size = n;
  profile.push_back(std::log2(static_cast<double>(image_size)));
  for (std::uint64_t t = 1; t <= t_max; ++t) {
    std::fill(next.begin(), next.end(), 0);
    std::size_t count = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (image[s] && !next[map[s]]) {
        next[map[s]] = 1;
        ++count;
      }
    }
    // Images are nested, so an unchanged size means the profile is flat from
    // here on.
    if (count == image_size) {
      profile.insert(profile.end(), static_cast<std::size_t>(t_max - t + 1),
                     profile.back());
      return profile;
    }
    image.swap(next);
    image_size = count;
    profile.push_back(std::log2(static_cast<double>(image_size)));
  }
  return profile;
}

}  // namespace qca
