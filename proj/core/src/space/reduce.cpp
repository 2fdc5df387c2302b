#include "cmv/space/reduce.hpp"

#include <map>
#include <set>
#include <sstream>

namespace cmv::space {

std::string ReduceStats::render() const {
  std::ostringstream out;
  out << "nodes " << nodes_before << " -> " << nodes_after << ", arcs "
      << arcs_before << " -> " << arcs_after << " (self-arcs dropped "
      << self_arcs_dropped << ", duplicates merged " << duplicate_arcs_merged
      << ")";
  if (root_removed) out << " [RootRemovedWarning]";
  return out.str();
}

StateGraph reduce_compositional(const StateGraph& g,
                                const ReduceOptions& options,
                                ReduceStats* stats) {
  const Predicate retain =
      options.retain ? *options.retain : Predicate::top_level_active();

  ReduceStats local;
  local.nodes_before = g.alive_node_count();
  local.arcs_before = g.arcs.size();

  size_t n = g.nodes.size();
  std::vector<bool> keep(n, false);
  for (size_t i = 0; i < n; ++i)
    if (g.nodes[i].alive) keep[i] = retain(g, static_cast<int>(i));

  // to -> label; the first arc between a pair wins, later ones merge.
  std::vector<std::map<int, std::string>> succ(n);
  std::vector<std::set<int>> pred(n);
  for (const auto& a : g.arcs) {
    if (!g.nodes[a.from].alive || !g.nodes[a.to].alive) continue;
    auto [it, fresh] = succ[a.from].emplace(a.to, a.label);
    if (fresh)
      pred[a.to].insert(a.from);
    else
      ++local.duplicate_arcs_merged;
  }

  for (size_t v = 0; v < n; ++v) {
    if (keep[v] || !g.nodes[v].alive) continue;
    for (int p : pred[v]) {
      if (p == static_cast<int>(v)) continue;
      for (const auto& [s, label] : succ[v]) {
        if (s == static_cast<int>(v)) continue;
        if (p == s) {
          // Splicing a predecessor to itself encodes internal activity of
          // the collapsed region: dropped.
          ++local.self_arcs_dropped;
          continue;
        }
        auto [it, fresh] = succ[p].emplace(s, std::string());
        if (fresh)
          pred[s].insert(p);
        else
          ++local.duplicate_arcs_merged;
      }
    }
    for (int p : pred[v])
      if (p != static_cast<int>(v)) succ[p].erase(static_cast<int>(v));
    for (const auto& [s, label] : succ[v])
      if (s != static_cast<int>(v)) pred[s].erase(static_cast<int>(v));
    if (succ[v].count(static_cast<int>(v))) ++local.self_arcs_dropped;
    succ[v].clear();
    pred[v].clear();
  }

  StateGraph out;
  out.place_names = g.place_names;
  out.top_level_places = g.top_level_places;
  out.budget_exceeded = g.budget_exceeded;
  out.has_omega = g.has_omega;
  for (size_t i = 0; i < n; ++i) {
    StateGraph::Node node = g.nodes[i];
    if (!keep[i] || !g.nodes[i].alive) {
      node.alive = false;
      node.tokens.clear(); // description trimmed with the node
      node.key.clear();
      // keep the id slot so retained ids stay stable
      node.key = "removed#" + std::to_string(i);
    }
    out.add_node(std::move(node));
  }
  for (size_t from = 0; from < n; ++from)
    for (const auto& [to, label] : succ[from])
      out.add_arc(static_cast<int>(from), to, label);

  for (int r : g.roots)
    if (keep[r]) out.roots.push_back(r);
  if (out.roots.empty()) {
    local.root_removed = true;
    for (size_t i = 0; i < n; ++i) {
      if (!keep[i] || !g.nodes[i].alive) continue;
      bool has_retained_pred = !pred[i].empty();
      if (!has_retained_pred) out.roots.push_back(static_cast<int>(i));
    }
  }

  out.freeze();
  local.nodes_after = out.alive_node_count();
  local.arcs_after = out.arcs.size();
  if (stats) *stats = local;
  return out;
}

} // namespace cmv::space
