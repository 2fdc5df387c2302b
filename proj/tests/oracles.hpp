#pragma once

#include <cstdint>
#include <set>
#include <vector>

#include "cmv/petri/net.hpp"
#include "cmv/space/graph.hpp"

// Independent reference implementations the suites check the engine
// against. Deliberately naive: correctness over speed, and no shared code
// with the implementations under test.
namespace oracles {

// All reachable markings by saturation over a std::set, using a local
// token-game implementation (finite nets only; throws if `cap` markings
// are exceeded).
std::set<std::vector<std::int64_t>> enumerate_markings(
    const cmv::petri::PlaceTransitionNet& net, size_t cap = 100000);

// All non-negative integer vectors x with bounded entries (0..bound) and
// W^T x = 0 (x over rows of W), reduced to the minimal non-zero ones.
// For P-invariants pass W = A^T (vectors over places); for T-invariants
// pass W = A (vectors over transitions).
std::vector<std::vector<std::int64_t>> bounded_nullspace(
    const std::vector<std::vector<std::int64_t>>& w, std::int64_t bound);

// Pairwise reachability among `nodes` via BFS on the raw arc list.
bool reachable(const cmv::space::StateGraph& g, int from, int to);

// BFS distance (arc count) or -1.
int bfs_distance(const cmv::space::StateGraph& g, int from, int to);

} // namespace oracles
