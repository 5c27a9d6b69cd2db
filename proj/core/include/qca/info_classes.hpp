#pragma once

#include <cstdint>
#include <vector>

#include "qca/automaton.hpp"
#include "qca/hilbert.hpp"

namespace qca {

/// Partition of the state set into information classes: two states share a
/// class iff some forward iterate maps them to the same state. Class ids are
/// contiguous and assigned in order of each class's minimal member, which is
/// also its representative. Transient states belong to the class of their
/// eventual merge partners; nothing is dropped.
struct InfoClassPartition {
  std::vector<std::uint32_t> class_of;   // state -> class id
  std::vector<State> representatives;    // class id -> minimal member
  /// Minimal t such that "evolve(x, t) == evolve(y, t)" already induces the
  /// final partition; never exceeds the state count.
  std::uint64_t merge_time_bound = 0;

  std::size_t class_count() const noexcept { return representatives.size(); }
};

/// Compute the information classes by refining the partition along
/// successor-class keys until it stabilizes (at most size iterations).
InfoClassPartition compute_info_classes(const UpdateRule& rule);

/// The induced dynamics on information classes; always a bijection, because
/// classes whose images merged would have merged themselves.
class QuotientRule {
 public:
  explicit QuotientRule(UpdateRule rule);

  const UpdateRule& rule() const noexcept { return rule_; }
  std::size_t class_count() const noexcept { return rule_.size(); }

 private:
  UpdateRule rule_;  // invariant: invertible
};

/// Project the rule onto the classes of `partition`. The partition must be
/// the one computed from this rule; anything else throws ConsistencyError.
QuotientRule quotient_dynamics(const UpdateRule& rule, const InfoClassPartition& partition);

/// compute_info_classes |> quotient_dynamics |> lift_to_unitary. Succeeds for
/// every rule, invertible or not: the quotient always carries a unitary.
PermutationUnitary class_unitary(const UpdateRule& rule);

/// Entry t is log2 of the image size of the t-fold map over the whole state
/// set, for t = 0..t_max. Non-increasing; constant iff the rule is
/// invertible; the limit value is log2 of the number of recurrent states.
std::vector<double> entropy_profile(const UpdateRule& rule, std::uint64_t t_max);

}  // namespace qca
