#include "cmv/petri/analysis.hpp"

#include <deque>
#include <map>

#include "cmv/diag.hpp"

namespace cmv::petri {

namespace {

int require_transition(const PlaceTransitionNet& net, const std::string& name) {
  int t = net.transition_index(name);
  if (t < 0)
    fail(ErrorKind::UnknownTransition, "no transition named '" + name + "'");
  return t;
}

void check_transition_id(const PlaceTransitionNet& net, int t) {
  if (t < 0 || static_cast<size_t>(t) >= net.transition_count())
    fail(ErrorKind::UnknownTransition,
         "transition index " + std::to_string(t) + " out of range");
}

space::StateGraph::Node make_node(const PlaceTransitionNet& net,
                                  const Marking& m) {
  space::StateGraph::Node node;
  node.key = marking_key(m);
  for (size_t p = 0; p < m.counts.size(); ++p) {
    const Tokens& t = m.counts[p];
    if (t.is_omega() || t.count() != 0) {
      // P/T view: one INT value = the token count; omega encoded as -1.
      std::int64_t v = t.is_omega() ? -1 : t.count();
      node.tokens.push_back({static_cast<int>(p), {Value::integer(v)}});
    }
  }
  return node;
}

} // namespace

std::string marking_key(const Marking& m) {
  return m.render();
}

bool enabled(const PlaceTransitionNet& net, const Marking& m, int transition) {
  check_transition_id(net, transition);
  for (const auto& arc : net.arcs()) {
    if (!arc.place_to_transition || arc.transition != transition) continue;
    if (!(m.counts[arc.place] >= arc.weight)) return false;
  }
  return true; // also covers the source-transition case (empty preset)
}

bool enabled(const PlaceTransitionNet& net, const Marking& m,
             const std::string& transition) {
  return enabled(net, m, require_transition(net, transition));
}

Marking fire(const PlaceTransitionNet& net, const Marking& m, int transition) {
  if (!enabled(net, m, transition))
    fail(ErrorKind::NotEnabled,
         "transition '" + net.transitions()[transition] + "' is not enabled at " +
             m.render());
  Marking out = m;
  for (const auto& arc : net.arcs()) {
    if (arc.transition != transition) continue;
    Tokens& t = out.counts[arc.place];
    t = t + (arc.place_to_transition ? -arc.weight : arc.weight);
  }
  return out;
}

Marking fire(const PlaceTransitionNet& net, const Marking& m,
             const std::string& transition) {
  return fire(net, m, require_transition(net, transition));
}

std::vector<int> enabled_transitions(const PlaceTransitionNet& net,
                                     const Marking& m) {
  std::vector<int> out;
  for (size_t t = 0; t < net.transition_count(); ++t)
    if (enabled(net, m, static_cast<int>(t))) out.push_back(static_cast<int>(t));
  return out;
}

space::StateGraph reachability_graph(const PlaceTransitionNet& net,
                                     size_t node_budget) {
  space::StateGraph g;
  g.place_names = net.places();

  std::deque<std::pair<int, Marking>> worklist;
  int root = g.add_node(make_node(net, net.initial_marking()));
  g.roots.push_back(root);
  worklist.push_back({root, net.initial_marking()});

  while (!worklist.empty()) {
    auto [id, m] = worklist.front();
    worklist.pop_front();
    for (int t : enabled_transitions(net, m)) {
      Marking next = fire(net, m, t);
      std::string key = marking_key(next);
      int target = g.find_node(key);
      if (target < 0) {
        if (g.nodes.size() >= node_budget) {
          g.budget_exceeded = true;
          continue;
        }
        target = g.add_node(make_node(net, next));
        worklist.push_back({target, next});
      }
      g.add_arc(id, target, net.transitions()[t]);
    }
  }
  g.freeze();
  return g;
}

space::StateGraph coverability_graph(const PlaceTransitionNet& net) {
  space::StateGraph g;
  g.place_names = net.places();

  // Markings per node id, plus construction-tree parents for the
  // ancestor-covering rule.
  std::vector<Marking> markings;
  std::vector<int> parent;

  int root = g.add_node(make_node(net, net.initial_marking()));
  g.roots.push_back(root);
  markings.push_back(net.initial_marking());
  parent.push_back(-1);

  std::deque<int> worklist{root};
  while (!worklist.empty()) {
    int id = worklist.front();
    worklist.pop_front();
    Marking m = markings[id];
    for (int t : enabled_transitions(net, m)) {
      Marking next = fire(net, m, t);
      // Accelerate: compare against ancestors on the tree path.
      for (int a = id; a >= 0; a = parent[a]) {
        if (next.strictly_covers(markings[a])) {
          for (size_t p = 0; p < next.counts.size(); ++p)
            if (!next.counts[p].is_omega() &&
                next.counts[p].count() > markings[a].counts[p].count())
              next.counts[p] = Tokens::omega();
        }
      }
      std::string key = marking_key(next);
      int target = g.find_node(key);
      if (target < 0) {
        target = g.add_node(make_node(net, next));
        markings.push_back(next);
        parent.push_back(id);
        worklist.push_back(target);
        for (const Tokens& tok : next.counts)
          if (tok.is_omega()) g.has_omega = true;
      }
      g.add_arc(id, target, net.transitions()[t]);
    }
  }
  g.freeze();
  return g;
}

std::string BoundednessVerdict::render() const {
  if (bounded) {
    std::int64_t k = 0;
    for (std::int64_t b : bounds) k = std::max(k, b);
    return "Bounded(k=" + std::to_string(k) + ")";
  }
  std::string out = "Unbounded({";
  for (size_t i = 0; i < witnesses.size(); ++i) {
    if (i) out += ",";
    out += witnesses[i];
  }
  return out + "})";
}

BoundednessVerdict check_boundedness(const PlaceTransitionNet& net) {
  space::StateGraph g = coverability_graph(net);
  BoundednessVerdict verdict;
  std::vector<bool> omega(net.place_count(), false);
  std::vector<std::int64_t> bounds(net.place_count(), 0);
  for (const auto& node : g.nodes) {
    for (const auto& [p, vals] : node.tokens) {
      std::int64_t v = vals.front().as_int();
      if (v < 0)
        omega[p] = true;
      else
        bounds[p] = std::max(bounds[p], v);
    }
  }
  for (size_t p = 0; p < net.place_count(); ++p)
    if (omega[p]) verdict.witnesses.push_back(net.places()[p]);
  verdict.bounded = verdict.witnesses.empty();
  verdict.bounds = std::move(bounds);
  return verdict;
}

std::string DeadlockVerdict::render() const {
  switch (kind) {
    case Kind::DeadlockFree: return "DeadlockFree";
    case Kind::Deadlock:
      return "Deadlock(" + (witness ? witness->render() : std::string("?")) + ")";
    case Kind::Inconclusive: return "Inconclusive";
  }
  return "?";
}

DeadlockVerdict check_deadlock_free(const PlaceTransitionNet& net,
                                    size_t node_budget) {
  DeadlockVerdict verdict;
  BoundednessVerdict bounded = check_boundedness(net);
  if (!bounded.bounded) {
    verdict.kind = DeadlockVerdict::Kind::Inconclusive;
    return verdict;
  }
  space::StateGraph g = reachability_graph(net, node_budget);
  if (g.budget_exceeded) {
    verdict.kind = DeadlockVerdict::Kind::Inconclusive;
    return verdict;
  }
  for (size_t i = 0; i < g.nodes.size(); ++i) {
    if (g.successors(static_cast<int>(i)).empty()) {
      verdict.kind = DeadlockVerdict::Kind::Deadlock;
      Marking m;
      m.counts.assign(net.place_count(), Tokens(0));
      for (const auto& [p, vals] : g.nodes[i].tokens)
        m.counts[p] = Tokens(vals.front().as_int());
      verdict.witness = m;
      return verdict;
    }
  }
  verdict.kind = DeadlockVerdict::Kind::DeadlockFree;
  return verdict;
}

} // namespace cmv::petri
