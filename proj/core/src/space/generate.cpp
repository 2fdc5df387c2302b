#include "cmv/space/generate.hpp"

#include <deque>

#include "cmv/colored/engine.hpp"
#include "cmv/petri/analysis.hpp"
#include "cmv/space/reduce.hpp"

namespace cmv::space {

namespace {

StateGraph::Node colored_node(const colored::ColoredSystem& sys,
                              const colored::SystemMarking& m) {
  StateGraph::Node node;
  node.key = m.key();
  for (size_t p = 0; p < sys.places.size(); ++p)
    if (!m.at(static_cast<int>(p)).empty())
      node.tokens.push_back({static_cast<int>(p), m.at(static_cast<int>(p))});
  return node;
}

} // namespace

StateGraph generate(const colored::ColoredSystem& sys,
                    const GenerateOptions& options) {
  StateGraph g;
  for (const auto& p : sys.places) g.place_names.push_back(p.name);
  for (size_t p = 0; p < sys.places.size(); ++p)
    if (sys.places[p].top_level)
      g.top_level_places.push_back(static_cast<int>(p));

  colored::SystemMarking m0 = colored::initial_marking(sys);
  std::deque<std::pair<int, colored::SystemMarking>> worklist;
  int root = g.add_node(colored_node(sys, m0));
  g.roots.push_back(root);
  worklist.push_back({root, std::move(m0)});

  while (!worklist.empty()) {
    auto [id, m] = std::move(worklist.front());
    worklist.pop_front();
    for (const colored::Binding& b : colored::enabled_bindings(sys, m)) {
      colored::SystemMarking next = colored::fire_binding(sys, m, b);
      std::string key = next.key();
      int target = g.find_node(key);
      if (target < 0) {
        if (g.nodes.size() >= options.node_budget) {
          g.budget_exceeded = true;
          continue;
        }
        target = g.add_node(colored_node(sys, next));
        worklist.push_back({target, std::move(next)});
      }
      g.add_arc(id, target, b.event(sys) + " " + b.descriptor);
    }
  }
  g.freeze();
  if (options.on_the_fly) {
    ReduceOptions ropts;
    return reduce_compositional(g, ropts);
  }
  return g;
}

StateGraph generate(const petri::PlaceTransitionNet& net,
                    const GenerateOptions& options) {
  StateGraph g = petri::reachability_graph(net, options.node_budget);
  return g;
}

} // namespace cmv::space
