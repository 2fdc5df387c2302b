#include "cmv/diag.hpp"
#include "cmv/transform/transform.hpp"

namespace cmv::transform {

using colored::ColoredComponent;
using model::EventDirection;
using model::ExtendedComponent;

std::pair<ColoredComponent, TransformationLog> extended_to_colored(
    const ExtendedComponent& e, int instances) {
  const model::BasicComponent& base = e.base;
  ColoredComponent c;
  TransformationLog log;
  c.name = base.name;
  c.instances = instances;

  // Structural layer: one typed place per state variable (rules 3-4).
  for (const auto& sv : e.state_variables) {
    if (!sv.initial)
      fail(ErrorKind::Type,
           "state variable '" + sv.name + "' has no initial value");
    c.sv_places.push_back({sv.name, sv.type, *sv.initial});
    log.mappings.push_back({base.name + "." + sv.name, "sv-place " + sv.name,
                            "rule3/4 sv->place"});
  }

  // Behavioral layer: INT state places (rule 1), initial tokens carry the
  // instance ids (rule 2).
  int initial_count = 0;
  for (const auto& st : base.states) {
    c.state_places.push_back(st.name);
    log.mappings.push_back(
        {base.name + "." + st.name, "state-place " + st.name, "rule1 state->place"});
    if (st.is_initial) {
      c.initial_state = st.name;
      ++initial_count;
    }
  }
  if (initial_count != 1)
    fail(ErrorKind::Reference,
         "colored transformation requires exactly one initial state in '" +
             base.name + "'");

  // Communication layer: a typed port per externally visible event (rules
  // 5-6, 13-14). Self-directed events stay local to the behavioral layer.
  for (const auto& ev : base.events) {
    EventDirection dir = base.direction(ev);
    if (dir == EventDirection::Internal) continue;
    ColoredComponent::Port port;
    port.event_id = ev.id;
    port.name = ev.name;
    port.color = ev.payload_type();
    if (!port.color.is_concrete())
      fail(ErrorKind::Type, "event '" + ev.name +
                                "' has a non-executable payload type " +
                                port.color.render());
    port.tag = dir == EventDirection::Send ? ColoredComponent::PortTag::Out
                                           : ColoredComponent::PortTag::In;
    c.ports.push_back(port);
    log.mappings.push_back({base.name + "." + ev.name, "port " + ev.name,
                            "rule5/6 event->port"});
    log.mappings.push_back(
        {base.name + "." + ev.name,
         std::string("port tag ") +
             (port.tag == ColoredComponent::PortTag::Out ? "OUT" : "IN"),
         "rule13/14 direction->tag"});
  }

  // Transitions (rules 7-12).
  int seq = 0;
  for (const auto& t : e.transitions) {
    const model::EventDef* ev = base.find_event(t.event_id);
    ColoredComponent::Transition ct;
    ct.name = ev->name + "(" + t.from_state + ">" + t.to_state + ")#" +
              std::to_string(seq++);
    ct.from_state = t.from_state;
    ct.to_state = t.to_state;
    ct.event_id = t.event_id;
    ct.event_name = ev->name;
    ct.direction = base.direction(*ev);
    ct.guard = t.guard;
    ct.action = t.action;
    for (const auto& p : ev->parameters) ct.params.push_back(p.name);

    for (const auto& in : t.inputs) {
      auto kind = t.outputs.count(in) ? ColoredComponent::ArcKind::InOut
                                      : ColoredComponent::ArcKind::In;
      ct.sv_arcs.push_back({in, kind});
    }
    for (const auto& out : t.outputs) {
      if (t.inputs.count(out)) continue; // already added as InOut
      ct.sv_arcs.push_back({out, ColoredComponent::ArcKind::Out});
    }

    log.mappings.push_back(
        {base.name + " transition(" + t.from_state + "," + t.event_id + "," +
             t.to_state + ")",
         "transition " + ct.name, "rule7/8 transition+arcs"});
    if (t.guard)
      log.mappings.push_back({base.name + " guard " + t.guard->render(),
                              "guard on " + ct.name, "rule9 guard"});
    if (!t.action.empty())
      log.mappings.push_back({base.name + " action of " + ct.name,
                              "action on " + ct.name, "rule10 action"});
    for (const auto& arc : ct.sv_arcs) {
      const char* rule = arc.kind == ColoredComponent::ArcKind::In
                             ? "rule11 input->sv-arc"
                             : arc.kind == ColoredComponent::ArcKind::Out
                                   ? "rule12 output->sv-arc"
                                   : "rule11+12 bidirectional sv-arc";
      log.mappings.push_back(
          {base.name + "." + arc.sv + " on " + ct.name, "sv-arc", rule});
    }
    c.transitions.push_back(std::move(ct));
  }

  // Base actions map through the transitions that fire their events
  // (rule 7): record them so the log covers every action.
  for (const auto& action : base.actions) {
    bool mapped = false;
    for (const auto& ct : c.transitions) {
      if (ct.event_id == action.event_id) {
        log.mappings.push_back({base.name + "." + action.id,
                                "transition " + ct.name, "rule7 action->transition"});
        mapped = true;
      }
    }
    if (!mapped)
      log.omissions.push_back(base.name + "." + action.id +
                              " has no corresponding transition");
  }

  return {std::move(c), std::move(log)};
}

} // namespace cmv::transform
