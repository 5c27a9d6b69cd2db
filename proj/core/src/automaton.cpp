#include "qca/automaton.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>
#include <utility>

#include "qca/errors.hpp"

namespace qca {

namespace {
constexpr std::uint32_t kUnvisited = 0xffffffffu;
}  // namespace

StateSpace::StateSpace(std::size_t size) : size_(size) {
  if (size == 0) {
    throw InputError("StateSpace: size must be at least 1");
  }
}

StateSpace::StateSpace(std::size_t size, std::vector<std::string> labels)
    : StateSpace(size) {
  if (labels.size() != size) {
    throw InputError("StateSpace: got " + std::to_string(labels.size()) +
                     " labels for " + std::to_string(size) + " states");
  }
  std::unordered_set<std::string_view> seen;
  for (const std::string& label : labels) {
    if (!seen.insert(label).second) {
      throw InputError("StateSpace: duplicate label \"" + label + "\"");
    }
  }
  labels_ = std::move(labels);
}

UpdateRule::UpdateRule(StateSpace space, std::vector<State> map)
    : space_(std::move(space)), map_(std::move(map)) {
  const std::size_t n = space_.size();
  if (map_.size() != n) {
    throw InputError("UpdateRule: map has " + std::to_string(map_.size()) +
                     " entries, expected " + std::to_string(n) +
                     " (the rule must be total)");
  }
  std::vector<bool> hit(n, false);
  bool bijective = true;
  for (std::size_t i = 0; i < n; ++i) {
    const State successor = map_[i];
    if (successor >= n) {
      throw InputError("UpdateRule: map[" + std::to_string(i) + "] = " +
                       std::to_string(successor) + " is out of range for size " +
                       std::to_string(n));
    }
    if (hit[successor]) {
      bijective = false;
    }
    hit[successor] = true;
  }
  invertible_ = bijective;
}

State UpdateRule::step(State s) const {
  if (s >= size()) {
    throw InputError("step: state " + std::to_string(s) + " is out of range for size " +
                     std::to_string(size()));
  }
  return map_[s];
}

State UpdateRule::evolve(State s, std::uint64_t t) const {
  if (s >= size()) {
    throw InputError("evolve: state " + std::to_string(s) +
                     " is out of range for size " + std::to_string(size()));
  }
  const std::uint64_t n = size();
  if (t <= n) {
    State cur = s;
    for (std::uint64_t i = 0; i < t; ++i) {
      cur = map_[cur];
    }
    return cur;
  }
  // t exceeds the state count, so the orbit has entered its cycle; walk to the
  // first revisit and take the remainder along the cycle.
  std::vector<State> path;
  std::vector<std::uint32_t> pos(n, kUnvisited);
  State cur = s;
  while (pos[cur] == kUnvisited) {
    pos[cur] = static_cast<std::uint32_t>(path.size());
    path.push_back(cur);
    cur = map_[cur];
  }
  const std::uint64_t entry = pos[cur];
  const std::uint64_t period = path.size() - entry;
  return path[entry + (t - entry) % period];
}

Trajectory trace_trajectory(const UpdateRule& rule, State start) {
  if (start >= rule.size()) {
    throw InputError("trace_trajectory: state " + std::to_string(start) +
                     " is out of range for size " + std::to_string(rule.size()));
  }
  const auto map = rule.map();
  Trajectory out;
  out.start = start;
  std::vector<std::uint32_t> pos(rule.size(), kUnvisited);
  State cur = start;
  while (pos[cur] == kUnvisited) {
    pos[cur] = static_cast<std::uint32_t>(out.steps.size());
    out.steps.push_back(cur);
    cur = map[cur];
  }
  out.eventual_period = out.steps.size() - pos[cur];
  return out;
}

std::size_t CycleDecomposition::cycle_state_count() const noexcept {
  std::size_t total = 0;
  for (const auto& cycle : cycles) {
    total += cycle.size();
  }
  return total;
}

std::size_t CycleDecomposition::transient_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(tail_length.begin(), tail_length.end(),
                    [](std::uint32_t tail) { return tail > 0; }));
}

CycleDecomposition cycle_decomposition(const UpdateRule& rule) {
  const std::size_t n = rule.size();
  const auto map = rule.map();

  CycleDecomposition out;
  out.cycle_of.assign(n, 0);
  out.tail_length.assign(n, 0);

  enum : std::uint8_t { kNew = 0, kOnPath = 1, kResolved = 2 };
  std::vector<std::uint8_t> color(n, kNew);
  std::vector<std::uint32_t> pos(n, 0);  // index in the current path while kOnPath
  std::vector<State> path;

  for (State s = 0; s < n; ++s) {
    if (color[s] != kNew) {
      continue;
    }
    path.clear();
    State cur = s;
    while (color[cur] == kNew) {
      color[cur] = kOnPath;
      pos[cur] = static_cast<std::uint32_t>(path.size());
      path.push_back(cur);
      cur = map[cur];
    }

    std::uint32_t attach_cycle = 0;
    std::uint32_t attach_tail = 0;
    std::size_t cycle_start = path.size();
    if (color[cur] == kOnPath) {
      // The walk closed a new cycle inside the current path.
      cycle_start = pos[cur];
      attach_cycle = static_cast<std::uint32_t>(out.cycles.size());
      std::vector<State> cycle(path.begin() + static_cast<std::ptrdiff_t>(cycle_start),
                               path.end());
      for (State member : cycle) {
        out.cycle_of[member] = attach_cycle;
        out.tail_length[member] = 0;
        color[member] = kResolved;
      }
      out.cycles.push_back(std::move(cycle));
    } else {
      // The walk merged into an already resolved region.
      attach_cycle = out.cycle_of[cur];
      attach_tail = out.tail_length[cur];
    }
    for (std::size_t i = cycle_start; i-- > 0;) {
      const State st = path[i];
      out.tail_length[st] = attach_tail + static_cast<std::uint32_t>(cycle_start - i);
      out.cycle_of[st] = attach_cycle;
      color[st] = kResolved;
    }
  }

  // Canonical form: each cycle starts at its minimal member, cycles ordered by
  // that member.
  for (auto& cycle : out.cycles) {
    const auto min_it = std::min_element(cycle.begin(), cycle.end());
    std::rotate(cycle.begin(), min_it, cycle.end());
  }
  std::vector<std::uint32_t> order(out.cycles.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint32_t lhs, std::uint32_t rhs) {
    return out.cycles[lhs].front() < out.cycles[rhs].front();
  });
  std::vector<std::vector<State>> sorted_cycles(out.cycles.size());
  std::vector<std::uint32_t> new_id(out.cycles.size());
  for (std::uint32_t rank = 0; rank < order.size(); ++rank) {
    sorted_cycles[rank] = std::move(out.cycles[order[rank]]);
    new_id[order[rank]] = rank;
  }
  out.cycles = std::move(sorted_cycles);
  for (auto& id : out.cycle_of) {
    id = new_id[id];
  }
  return out;
}

}  // namespace qca
