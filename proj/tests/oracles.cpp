#include "oracles.hpp"

#include <deque>
#include <stdexcept>

namespace oracles {

using cmv::petri::PlaceTransitionNet;

namespace {

// Local token game, written against the arc list only.
bool naive_enabled(const PlaceTransitionNet& net,
                   const std::vector<std::int64_t>& m, size_t t) {
  for (const auto& arc : net.arcs())
    if (arc.place_to_transition && arc.transition == static_cast<int>(t) &&
        m[arc.place] < arc.weight)
      return false;
  return true;
}

std::vector<std::int64_t> naive_fire(const PlaceTransitionNet& net,
                                     std::vector<std::int64_t> m, size_t t) {
  for (const auto& arc : net.arcs()) {
    if (arc.transition != static_cast<int>(t)) continue;
    if (arc.place_to_transition)
      m[arc.place] -= arc.weight;
    else
      m[arc.place] += arc.weight;
  }
  return m;
}

} // namespace

std::set<std::vector<std::int64_t>> enumerate_markings(
    const PlaceTransitionNet& net, size_t cap) {
  std::vector<std::int64_t> m0;
  for (const auto& t : net.initial_marking().counts) m0.push_back(t.count());

  std::set<std::vector<std::int64_t>> seen{m0};
  std::deque<std::vector<std::int64_t>> frontier{m0};
  while (!frontier.empty()) {
    auto m = frontier.front();
    frontier.pop_front();
    for (size_t t = 0; t < net.transition_count(); ++t) {
      if (!naive_enabled(net, m, t)) continue;
      auto next = naive_fire(net, m, t);
      if (seen.insert(next).second) {
        if (seen.size() > cap)
          throw std::runtime_error("marking enumeration exceeded cap");
        frontier.push_back(next);
      }
    }
  }
  return seen;
}

std::vector<std::vector<std::int64_t>> bounded_nullspace(
    const std::vector<std::vector<std::int64_t>>& w, std::int64_t bound) {
  if (w.empty()) return {};
  size_t rows = w.size(), cols = w[0].size();

  std::vector<std::vector<std::int64_t>> solutions;
  std::vector<std::int64_t> x(rows, 0);
  // odometer over all vectors in [0,bound]^rows
  for (;;) {
    bool zero = true;
    for (auto v : x)
      if (v != 0) zero = false;
    if (!zero) {
      bool ok = true;
      for (size_t c = 0; c < cols && ok; ++c) {
        std::int64_t dot = 0;
        for (size_t r = 0; r < rows; ++r) dot += x[r] * w[r][c];
        if (dot != 0) ok = false;
      }
      if (ok) solutions.push_back(x);
    }
    size_t i = rows;
    for (;;) {
      if (i == 0) goto done;
      --i;
      if (++x[i] <= bound) break;
      x[i] = 0;
    }
  }
done:
  // keep minimal ones: no other solution dominates componentwise
  std::vector<std::vector<std::int64_t>> minimal;
  for (const auto& cand : solutions) {
    bool dominated = false;
    for (const auto& other : solutions) {
      if (&other == &cand) continue;
      bool le = true, lt = false;
      for (size_t i = 0; i < rows; ++i) {
        if (other[i] > cand[i]) le = false;
        if (other[i] < cand[i]) lt = true;
      }
      if (le && lt) dominated = true;
    }
    if (!dominated) minimal.push_back(cand);
  }
  return minimal;
}

bool reachable(const cmv::space::StateGraph& g, int from, int to) {
  if (from == to) return true;
  std::vector<bool> seen(g.nodes.size(), false);
  std::deque<int> queue{from};
  seen[from] = true;
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    for (const auto& a : g.arcs) {
      if (a.from != n || seen[a.to]) continue;
      if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
      if (a.to == to) return true;
      seen[a.to] = true;
      queue.push_back(a.to);
    }
  }
  return false;
}

int bfs_distance(const cmv::space::StateGraph& g, int from, int to) {
  std::vector<int> dist(g.nodes.size(), -1);
  std::deque<int> queue{from};
  dist[from] = 0;
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    if (n == to) return dist[n];
    for (const auto& a : g.arcs) {
      if (a.from != n || dist[a.to] != -1) continue;
      if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
      dist[a.to] = dist[n] + 1;
      queue.push_back(a.to);
    }
  }
  return -1;
}

} // namespace oracles
