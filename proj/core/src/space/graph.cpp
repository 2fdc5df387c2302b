#include "cmv/space/graph.hpp"

#include <algorithm>
#include <sstream>

#include "cmv/diag.hpp"

namespace cmv::space {

int StateGraph::add_node(Node n) {
  if (frozen_) fail(ErrorKind::Io, "graph is frozen");
  int id = static_cast<int>(nodes.size());
  index_.emplace(n.key, id);
  nodes.push_back(std::move(n));
  return id;
}

void StateGraph::add_arc(int from, int to, std::string label) {
  if (frozen_) fail(ErrorKind::Io, "graph is frozen");
  arcs.push_back(Arc{from, to, std::move(label)});
}

int StateGraph::find_node(const std::string& key) const {
  auto it = index_.find(key);
  return it == index_.end() ? -1 : it->second;
}

void StateGraph::freeze() {
  if (frozen_) return;
  succ_.assign(nodes.size(), {});
  pred_.assign(nodes.size(), {});
  node_arcs_.assign(nodes.size(), {});
  for (size_t i = 0; i < arcs.size(); ++i) {
    const Arc& a = arcs[i];
    succ_[a.from].push_back(a.to);
    pred_[a.to].push_back(a.from);
    node_arcs_[a.from].push_back(static_cast<int>(i));
  }
  frozen_ = true;
}

void StateGraph::ensure_frozen(const char* op) const {
  if (!frozen_) fail(ErrorKind::Io, std::string(op) + " requires a frozen graph");
}

size_t StateGraph::alive_node_count() const {
  size_t n = 0;
  for (const auto& node : nodes)
    if (node.alive) ++n;
  return n;
}

const std::vector<int>& StateGraph::successors(int node) const {
  ensure_frozen("successors");
  return succ_[node];
}

const std::vector<int>& StateGraph::predecessors(int node) const {
  ensure_frozen("predecessors");
  return pred_[node];
}

const std::vector<int>& StateGraph::out_arcs(int node) const {
  ensure_frozen("out_arcs");
  return node_arcs_[node];
}

int StateGraph::place_index(const std::string& name) const {
  for (size_t i = 0; i < place_names.size(); ++i)
    if (place_names[i] == name) return static_cast<int>(i);
  return -1;
}

const std::vector<Value>* StateGraph::tokens_at(int node, int place) const {
  const Node& n = nodes[node];
  for (const auto& [p, vals] : n.tokens)
    if (p == place) return &vals;
  return nullptr;
}

std::string StateGraph::dump() const {
  std::ostringstream out;
  out << "nodes " << nodes.size() << " arcs " << arcs.size() << "\n";
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (!nodes[i].alive) continue;
    out << i << " " << nodes[i].key << "\n";
  }
  for (const auto& a : arcs)
    out << a.from << " -> " << a.to << " [" << a.label << "]\n";
  return out.str();
}

} // namespace cmv::space
