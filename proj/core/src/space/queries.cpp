#include "cmv/space/queries.hpp"

#include <deque>

namespace cmv::space {

DeadMarkings list_dead_markings(const StateGraph& g) {
  DeadMarkings out;
  out.incomplete = g.budget_exceeded;
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    if (!g.nodes[n].alive) continue;
    if (g.successors(static_cast<int>(n)).empty())
      out.nodes.push_back(static_cast<int>(n));
  }
  return out;
}

std::vector<int> search_nodes(const StateGraph& g, const Predicate& p,
                              std::optional<size_t> limit) {
  std::vector<int> out;
  for (size_t n = 0; n < g.nodes.size(); ++n) {
    if (!g.nodes[n].alive) continue;
    if (p(g, static_cast<int>(n))) {
      out.push_back(static_cast<int>(n));
      if (limit && out.size() >= *limit) break;
    }
  }
  return out;
}

std::vector<const StateGraph::Arc*> search_arcs(
    const StateGraph& g,
    const std::function<bool(const StateGraph::Arc&)>& pred) {
  std::vector<const StateGraph::Arc*> out;
  for (const auto& a : g.arcs) {
    if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
    if (pred(a)) out.push_back(&a);
  }
  return out;
}

std::vector<const StateGraph::Arc*> search_arcs(const StateGraph& g,
                                                const std::string& event) {
  return search_arcs(g, [&](const StateGraph::Arc& a) {
    size_t space = a.label.find(' ');
    std::string head =
        space == std::string::npos ? a.label : a.label.substr(0, space);
    return head == event;
  });
}

std::optional<std::vector<int>> path_exists(const StateGraph& g, int from,
                                            const Predicate& to) {
  std::vector<int> parent(g.nodes.size(), -2);
  std::deque<int> queue{from};
  parent[from] = -1;
  while (!queue.empty()) {
    int n = queue.front();
    queue.pop_front();
    if (to(g, n)) {
      std::vector<int> path;
      for (int cur = n; cur != -1; cur = parent[cur]) path.push_back(cur);
      std::reverse(path.begin(), path.end());
      return path;
    }
    for (int succ : g.successors(n)) {
      if (!g.nodes[succ].alive || parent[succ] != -2) continue;
      parent[succ] = n;
      queue.push_back(succ);
    }
  }
  return std::nullopt;
}

} // namespace cmv::space
