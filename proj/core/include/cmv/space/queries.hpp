#pragma once

#include <optional>

#include "cmv/space/predicate.hpp"

namespace cmv::space {

struct DeadMarkings {
  std::vector<int> nodes;
  // set when the graph was truncated: the result is a lower bound
  bool incomplete = false;
};

// Nodes with no outgoing arcs. An empty set on a complete graph is the
// deadlock-freedom claim for the explored space.
DeadMarkings list_dead_markings(const StateGraph& g);

// All (or the first `limit`) alive nodes satisfying p, in id order.
std::vector<int> search_nodes(const StateGraph& g, const Predicate& p,
                              std::optional<size_t> limit = std::nullopt);

// Arcs whose label's leading token (the event name) equals `event`.
std::vector<const StateGraph::Arc*> search_arcs(const StateGraph& g,
                                                const std::string& event);
std::vector<const StateGraph::Arc*> search_arcs(
    const StateGraph& g,
    const std::function<bool(const StateGraph::Arc&)>& pred);

// Shortest path by BFS from `from` to any node satisfying the predicate.
std::optional<std::vector<int>> path_exists(const StateGraph& g, int from,
                                            const Predicate& to);

} // namespace cmv::space
