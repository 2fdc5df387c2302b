#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cmv/petri/net.hpp"
#include "cmv/space/graph.hpp"

namespace cmv::petri {

// Eq-3.3 enabling: every input place holds at least the arc weight, or the
// transition has no input places.
bool enabled(const PlaceTransitionNet& net, const Marking& m, int transition);
bool enabled(const PlaceTransitionNet& net, const Marking& m,
             const std::string& transition);

// Eq-3.4 firing; throws NotEnabledError when the transition is not enabled.
Marking fire(const PlaceTransitionNet& net, const Marking& m, int transition);
Marking fire(const PlaceTransitionNet& net, const Marking& m,
             const std::string& transition);

std::vector<int> enabled_transitions(const PlaceTransitionNet& net,
                                     const Marking& m);

// BFS over reachable markings, deterministic node numbering (discovery
// order, transitions expanded in declaration order). Truncation at the
// node budget sets budget_exceeded instead of throwing.
space::StateGraph reachability_graph(const PlaceTransitionNet& net,
                                     size_t node_budget = 100000);

// Karp-Miller style coverability graph: a place entry becomes omega when a
// strictly covered ancestor exists on the construction path.
space::StateGraph coverability_graph(const PlaceTransitionNet& net);

struct BoundednessVerdict {
  bool bounded = false;
  // per-place bound when bounded
  std::vector<std::int64_t> bounds;
  // omega places when unbounded
  std::vector<std::string> witnesses;

  std::string render() const;
};

BoundednessVerdict check_boundedness(const PlaceTransitionNet& net);

struct DeadlockVerdict {
  enum class Kind { DeadlockFree, Deadlock, Inconclusive };
  Kind kind = Kind::Inconclusive;
  std::optional<Marking> witness;

  std::string render() const;
};

DeadlockVerdict check_deadlock_free(const PlaceTransitionNet& net,
                                    size_t node_budget = 100000);

// Serialization used for graph node keys.
std::string marking_key(const Marking& m);

} // namespace cmv::petri
