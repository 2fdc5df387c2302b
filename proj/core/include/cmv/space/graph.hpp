#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "cmv/types.hpp"

namespace cmv::space {

// Explored state space. Nodes are markings (of a flat net or of a colored
// system), arcs are fired transitions/bindings. Node ids are stable: they
// are assigned in BFS discovery order and survive reduction untouched.
class StateGraph {
public:
  struct Node {
    std::string key;    // canonical marking serialization (dedup + hashing)
    // Sparse token view used by predicates: (place index, tokens). For
    // place/transition nets each place holds one INT value = token count.
    std::vector<std::pair<int, std::vector<Value>>> tokens;
    bool alive = true;  // false after compositional reduction removed it
  };

  struct Arc {
    int from = 0;
    int to = 0;
    std::string label;  // transition name or binding descriptor
  };

  // Place table shared by every node's sparse token view.
  std::vector<std::string> place_names;
  // Indices of composition-level (top/main-model) places; empty for flat
  // nets where no such distinction exists.
  std::vector<int> top_level_places;

  std::vector<Node> nodes;
  std::vector<Arc> arcs;
  std::vector<int> roots;
  bool budget_exceeded = false;
  bool has_omega = false; // coverability graphs only

  int add_node(Node n);
  void add_arc(int from, int to, std::string label);
  int find_node(const std::string& key) const;

  void freeze();
  bool frozen() const { return frozen_; }

  size_t alive_node_count() const;
  const std::vector<int>& successors(int node) const;
  const std::vector<int>& predecessors(int node) const;
  const std::vector<int>& out_arcs(int node) const;

  int place_index(const std::string& name) const;

  // Token view helpers (empty vector when the place is unmarked).
  const std::vector<Value>* tokens_at(int node, int place) const;

  // Canonical textual dump of the whole graph; byte-identical across runs
  // for identical inputs (determinism checks diff this).
  std::string dump() const;

private:
  void ensure_frozen(const char* op) const;

  bool frozen_ = false;
  std::map<std::string, int> index_;
  std::vector<std::vector<int>> succ_, pred_, node_arcs_;
};

} // namespace cmv::space
