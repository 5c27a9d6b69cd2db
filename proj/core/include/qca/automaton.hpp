#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qca {

/// Dense state index; automata address their states as 0..size-1.
using State = std::uint32_t;

/// A finite set of ontological states. Labels are presentation metadata only;
/// they never affect dynamics. When present, there are exactly size() of them
/// and they are pairwise distinct.
class StateSpace {
 public:
  explicit StateSpace(std::size_t size);
  StateSpace(std::size_t size, std::vector<std::string> labels);

  std::size_t size() const noexcept { return size_; }
  bool has_labels() const noexcept { return !labels_.empty(); }
  std::span<const std::string> labels() const noexcept { return labels_; }

 private:
  std::size_t size_;
  std::vector<std::string> labels_;  // empty, or exactly size_ unique entries
};

/// A total deterministic update law: at every clock tick, state i becomes
/// map()[i]. Every entry is a valid index, so the rule is total by
/// construction. Invertibility is a derived property of the map, not a
/// constructor requirement; irreversible rules are first-class citizens.
///
/// Intended envelope: dense array-backed maps up to roughly a million states.
/// All member functions are pure; values can be shared across threads freely.
class UpdateRule {
 public:
  UpdateRule(StateSpace space, std::vector<State> map);

  const StateSpace& space() const noexcept { return space_; }
  std::span<const State> map() const noexcept { return map_; }
  std::size_t size() const noexcept { return space_.size(); }

  /// One clock tick. Throws InputError if s is out of range.
  State step(State s) const;

  /// t-fold composition of step; evolve(s, 0) == s. Runs in O(min(t, size)):
  /// once t exceeds the state count the orbit is already periodic and the
  /// remainder is taken along the detected cycle.
  State evolve(State s, std::uint64_t t) const;

  /// True iff the map is a bijection of the state set.
  bool is_invertible() const noexcept { return invertible_; }

 private:
  StateSpace space_;
  std::vector<State> map_;
  bool invertible_;
};

/// Orbit of one start state, followed until the first revisit.
struct Trajectory {
  State start = 0;
  /// Visited states beginning at start, up to (not including) the first
  /// repeated state; consecutive entries are related by the rule.
  std::vector<State> steps;
  /// Length of the cycle the orbit falls into.
  std::uint64_t eventual_period = 0;
};

Trajectory trace_trajectory(const UpdateRule& rule, State start);

/// Full decomposition of the functional graph: the disjoint cycles, and for
/// every state the cycle its orbit reaches plus the number of steps needed to
/// get there. Cycles are listed in increasing order of their minimal member
/// and each cycle starts at that member, making the output canonical.
struct CycleDecomposition {
  std::vector<std::vector<State>> cycles;
  std::vector<std::uint32_t> cycle_of;     // per state: index into cycles
  std::vector<std::uint32_t> tail_length;  // per state: 0 iff the state is on a cycle

  std::size_t cycle_state_count() const noexcept;
  std::size_t transient_count() const noexcept;
};

/// Whole-space decomposition by visited-marking over the functional graph,
/// linear in the number of states. Works for invertible and non-invertible
/// rules; for invertible rules the transient set is empty.
CycleDecomposition cycle_decomposition(const UpdateRule& rule);

}  // namespace qca
