#include <set>
#include <sstream>

#include "cmv/colored/engine.hpp"
#include "cmv/petri/analysis.hpp"
#include "cmv/transform/transform.hpp"

namespace cmv::transform {

std::string S3bReport::render() const {
  std::ostringstream out;
  out << "S3b: " << (pass ? "pass" : "fail") << "\n";
  for (const auto& i : issues) out << "  " << i << "\n";
  return out.str();
}

S3bReport check_s3b_ptnet(const model::ComposedComponent& c,
                          const petri::PlaceTransitionNet& net,
                          const TransformationLog& log, size_t node_budget) {
  S3bReport report;
  for (const auto& o : log.omissions) report.issues.push_back("omission: " + o);

  // Mapping totality over states, events and actions.
  for (const auto& member : c.members) {
    for (const auto& st : member.component.states)
      if (!log.maps_source(member.name + "." + st.name))
        report.issues.push_back("state " + member.name + "." + st.name +
                                " is not mapped");
    for (const auto& ev : member.component.events)
      if (!log.maps_source(member.name + "." + ev.name))
        report.issues.push_back("event " + member.name + "." + ev.name +
                                " is not mapped");
    for (const auto& a : member.component.actions)
      if (!log.maps_source(member.name + "." + a.id))
        report.issues.push_back("action " + member.name + "." + a.id +
                                " is not mapped");
  }

  // Execution evidence: every goal (or final) place acquires a token in
  // some reachable marking.
  space::StateGraph graph = petri::reachability_graph(net, node_budget);
  if (graph.budget_exceeded)
    report.issues.push_back("state space truncated; execution check incomplete");
  for (const auto& member : c.members) {
    for (const auto& st : member.component.states) {
      if (!st.is_goal && !st.is_final) continue;
      for (int inst = 1; inst <= member.instances; ++inst) {
        std::string prefix = member.instances == 1
                                 ? member.name
                                 : member.name + "#" + std::to_string(inst);
        int place = -1;
        for (size_t p = 0; p < net.place_count(); ++p)
          if (net.places()[p] == prefix + "." + st.name)
            place = static_cast<int>(p);
        if (place < 0) continue;
        bool acquired = false;
        for (size_t n = 0; n < graph.nodes.size() && !acquired; ++n)
          if (const auto* tokens = graph.tokens_at(static_cast<int>(n), place))
            if (!tokens->empty() && tokens->front().as_int() > 0)
              acquired = true;
        if (!acquired)
          report.issues.push_back("goal place " + prefix + "." + st.name +
                                  " never acquires a token");
      }
    }
  }

  report.pass = report.issues.empty();
  return report;
}

S3bReport check_s3b_colored(const model::ExtendedComponent& source,
                            const colored::ColoredComponent& target,
                            const TransformationLog& log) {
  S3bReport report;
  for (const auto& o : log.omissions) report.issues.push_back("omission: " + o);

  const model::BasicComponent& base = source.base;
  for (const auto& st : base.states) {
    if (!log.maps_source(base.name + "." + st.name))
      report.issues.push_back("state " + st.name + " is not mapped");
    bool present = false;
    for (const auto& sp : target.state_places)
      if (sp == st.name) present = true;
    if (!present)
      report.issues.push_back("state " + st.name + " has no state-place");
  }
  for (const auto& ev : base.events) {
    if (base.direction(ev) == model::EventDirection::Internal) continue;
    if (!target.find_port(ev.id))
      report.issues.push_back("event " + ev.name + " has no port");
    if (!log.maps_source(base.name + "." + ev.name))
      report.issues.push_back("event " + ev.name + " is not mapped");
  }
  for (const auto& a : base.actions)
    if (!log.maps_source(base.name + "." + a.id))
      report.issues.push_back("action " + a.id + " is not mapped");
  for (const auto& sv : source.state_variables)
    if (!target.find_sv(sv.name))
      report.issues.push_back("state variable " + sv.name + " has no place");

  // Color preservation (rule 6): port color equals the product of the
  // event's parameter types in declaration order.
  for (const auto& ev : base.events) {
    const colored::ColoredComponent::Port* port = target.find_port(ev.id);
    if (port && !(port->color == ev.payload_type()))
      report.issues.push_back("port " + ev.name + " color " +
                              port->color.render() + " != payload " +
                              ev.payload_type().render());
  }

  report.pass = report.issues.empty();
  return report;
}

S3bReport check_s3b_system(const model::ComposedComponent& c,
                           const colored::ColoredSystem& sys,
                           std::uint64_t seed, size_t max_steps) {
  S3bReport report;

  // Replay a seeded execution, tracking which behavioral states each
  // instance occupies.
  std::set<std::pair<std::string, std::string>> visited; // (instance, state)
  for (const auto& comp : sys.components)
    for (int inst = 1; inst <= comp.instances; ++inst)
      visited.insert({comp.name + "#" + std::to_string(inst),
                      comp.initial_state});

  colored::SystemMarking marking = colored::initial_marking(sys);
  std::mt19937_64 rng(seed);
  for (size_t step = 0; step < max_steps; ++step) {
    std::vector<colored::Binding> bindings =
        colored::enabled_bindings(sys, marking, rng);
    if (bindings.empty()) break;
    const colored::Binding& pick =
        bindings[static_cast<size_t>(rng() % bindings.size())];
    const auto& t = sys.transitions[pick.transition];
    if (!t.is_relay) {
      const colored::ColoredComponent& comp = sys.components[t.component];
      // state_out place name is "<comp>.<state>"
      std::string state = sys.places[t.state_out].name.substr(comp.name.size() + 1);
      visited.insert(
          {comp.name + "#" + std::to_string(pick.instance), state});
    }
    marking = colored::fire_binding(sys, marking, pick);
  }

  for (const auto& member : c.members) {
    auto goals = member.component.goal_states();
    auto finals = member.component.final_states();
    for (int inst = 1; inst <= member.instances; ++inst) {
      std::string key = member.name + "#" + std::to_string(inst);
      bool ok = false;
      for (const auto* f : finals)
        if (visited.count({key, f->name})) ok = true;
      if (!ok && !goals.empty()) {
        ok = true;
        for (const auto* g : goals)
          if (!visited.count({key, g->name})) ok = false;
      }
      if (!ok)
        report.issues.push_back(key + " never reached its goal/final states");
    }
  }

  report.pass = report.issues.empty();
  return report;
}

} // namespace cmv::transform
