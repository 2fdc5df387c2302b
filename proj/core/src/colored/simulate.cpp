#include "cmv/colored/simulate.hpp"

#include <sstream>

#include "cmv/diag.hpp"

namespace cmv::colored {

std::string SimTrace::render() const {
  std::ostringstream out;
  for (const auto& s : steps) out << s.descriptor << "\n";
  if (deadlocked) out << "<deadlock>\n";
  out << "final " << final_marking_key << "\n";
  return out.str();
}

namespace {

SimStep make_step(const ColoredSystem& sys, const Binding& b) {
  const auto& t = sys.transitions[b.transition];
  return SimStep{t.name, b.event(sys), b.descriptor, b.instance};
}

} // namespace

SimTrace simulate_auto(const ColoredSystem& sys, std::uint64_t seed,
                       size_t max_steps, SystemMarking& marking) {
  SimTrace trace;
  std::mt19937_64 rng(seed);
  for (size_t step = 0; step < max_steps; ++step) {
    std::vector<Binding> bindings = enabled_bindings(sys, marking, rng);
    if (bindings.empty()) {
      trace.deadlocked = true;
      break;
    }
    const Binding& pick = bindings[static_cast<size_t>(rng() % bindings.size())];
    trace.steps.push_back(make_step(sys, pick));
    marking = fire_binding(sys, marking, pick);
  }
  trace.final_marking_key = marking.key();
  return trace;
}

SimTrace simulate_auto(const ColoredSystem& sys, std::uint64_t seed,
                       size_t max_steps) {
  SystemMarking marking = initial_marking(sys);
  return simulate_auto(sys, seed, max_steps, marking);
}

SimTrace simulate_interactive(const ColoredSystem& sys, BindingChooser choose,
                              size_t max_steps) {
  SimTrace trace;
  SystemMarking marking = initial_marking(sys);
  for (size_t step = 0; step < max_steps; ++step) {
    std::vector<Binding> bindings = enabled_bindings(sys, marking);
    if (bindings.empty()) {
      trace.deadlocked = true;
      break;
    }
    std::optional<size_t> pick = choose(marking, bindings);
    if (!pick) break;
    if (*pick >= bindings.size())
      fail(ErrorKind::Reference, "binding index out of range");
    trace.steps.push_back(make_step(sys, bindings[*pick]));
    marking = fire_binding(sys, marking, bindings[*pick]);
  }
  trace.final_marking_key = marking.key();
  return trace;
}

ColoredSystem isolate(const ColoredComponent& component) {
  ColoredSystem sys;
  sys.name = component.name + "-isolated";
  sys.components.push_back(component);
  const ColoredComponent& c = sys.components.back();

  auto qualified = [&](const std::string& item) { return c.name + "." + item; };

  std::map<std::string, int> sv_place, state_place, port_place;
  for (const auto& sv : c.sv_places) {
    ColoredSystem::Place p;
    p.name = qualified(sv.name);
    p.color = TypeName::tuple({TypeName::integer(), sv.color});
    p.instance_tagged = true;
    for (int inst = 1; inst <= c.instances; ++inst)
      p.initial_tokens.push_back(
          Value::tuple({Value::integer(inst), sv.initial}));
    sv_place[sv.name] = sys.add_place(std::move(p));
  }
  for (const auto& st : c.state_places) {
    ColoredSystem::Place p;
    p.name = qualified(st);
    p.color = TypeName::integer();
    if (st == c.initial_state)
      for (int inst = 1; inst <= c.instances; ++inst)
        p.initial_tokens.push_back(Value::integer(inst));
    state_place[st] = sys.add_place(std::move(p));
  }
  for (const auto& port : c.ports) {
    ColoredSystem::Place p;
    p.name = qualified(port.name);
    p.color = port.color;
    port_place[port.event_id] = sys.add_place(std::move(p));
  }

  for (const auto& t : c.transitions) {
    ColoredSystem::Transition rt;
    rt.name = qualified(t.name);
    rt.event = t.event_name;
    rt.component = 0;
    rt.state_in = state_place.at(t.from_state);
    rt.state_out = state_place.at(t.to_state);
    rt.guard = t.guard;
    rt.action = t.action;
    rt.params = t.params;
    rt.direction = t.direction;
    for (const auto& arc : t.sv_arcs)
      rt.svs.push_back({sv_place.at(arc.sv), arc.sv, arc.kind});
    auto port_it = port_place.find(t.event_id);
    if (port_it != port_place.end()) {
      if (t.direction == model::EventDirection::Receive)
        rt.port_in = port_it->second;
      else if (t.direction == model::EventDirection::Send)
        rt.port_out = port_it->second;
    }
    sys.add_transition(std::move(rt));
  }
  return sys;
}

bool functional_test(const ColoredComponent& component,
                     const std::map<std::string, std::vector<Value>>& stimuli,
                     const std::function<bool(const OutTokens&)>& expected,
                     size_t max_steps) {
  ColoredSystem sys = isolate(component);
  SystemMarking marking = initial_marking(sys);

  // Stimuli are keyed by event name; colors must match the port.
  for (const auto& [event_name, tokens] : stimuli) {
    const ColoredComponent::Port* port = nullptr;
    for (const auto& p : component.ports)
      if (p.name == event_name) port = &p;
    if (!port || port->tag != ColoredComponent::PortTag::In)
      fail(ErrorKind::PortTag, "'" + event_name + "' is not an IN port");
    int place = sys.place_index(component.name + "." + port->name);
    for (const auto& tok : tokens) {
      if (tok.type() != port->color)
        fail(ErrorKind::ColorMismatch,
             "stimulus " + tok.render() + " does not match port color " +
                 port->color.render());
      marking.add(place, tok);
    }
  }

  // Deterministic run to quiescence: always the first enabled binding.
  for (size_t step = 0; step < max_steps; ++step) {
    std::vector<Binding> bindings = enabled_bindings(sys, marking);
    if (bindings.empty()) break;
    marking = fire_binding(sys, marking, bindings.front());
  }

  OutTokens collected;
  for (const auto& port : component.ports) {
    if (port.tag != ColoredComponent::PortTag::Out) continue;
    int place = sys.place_index(component.name + "." + port.name);
    collected[port.name] = marking.at(place);
  }
  return expected(collected);
}

} // namespace cmv::colored
