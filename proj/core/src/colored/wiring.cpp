#include "cmv/colored/wiring.hpp"

#include <map>

#include "cmv/diag.hpp"

namespace cmv::colored {

namespace {

std::string fresh_name(ColoredSystem& sys, const std::string& base) {
  if (sys.place_index(base) < 0) return base;
  int i = 2;
  while (sys.place_index(base + "_" + std::to_string(i)) >= 0) ++i;
  return base + "_" + std::to_string(i);
}

bool colors_compatible(const TypeName& sender, const TypeName& receiver,
                       const match::Taxonomy* taxonomy) {
  if (sender == receiver) return true;
  if (taxonomy) {
    match::SemanticRelation r =
        semantic_relation(sender.render(), receiver.render(), *taxonomy);
    return r == match::SemanticRelation::DirectChild;
  }
  return false;
}

} // namespace

ColoredSystem wire_system(const std::vector<ColoredComponent>& members,
                          const std::string& name,
                          const std::vector<WireEntry>& entries,
                          const match::Taxonomy* taxonomy) {
  ColoredSystem sys;
  sys.name = name;
  sys.components = members;
  sys.wiring = entries;

  auto find_component = [&](const std::string& n) -> const ColoredComponent* {
    for (const auto& m : sys.components)
      if (m.name == n) return &m;
    return nullptr;
  };

  std::map<std::pair<std::string, std::string>, int> sv_place, state_place;
  for (const auto& comp : sys.components) {
    for (const auto& sv : comp.sv_places) {
      ColoredSystem::Place p;
      p.name = comp.name + "." + sv.name;
      p.color = TypeName::tuple({TypeName::integer(), sv.color});
      p.instance_tagged = true;
      for (int inst = 1; inst <= comp.instances; ++inst)
        p.initial_tokens.push_back(
            Value::tuple({Value::integer(inst), sv.initial}));
      sv_place[{comp.name, sv.name}] = sys.add_place(std::move(p));
    }
    for (const auto& st : comp.state_places) {
      ColoredSystem::Place p;
      p.name = comp.name + "." + st;
      p.color = TypeName::integer();
      if (st == comp.initial_state)
        for (int inst = 1; inst <= comp.instances; ++inst)
          p.initial_tokens.push_back(Value::integer(inst));
      state_place[{comp.name, st}] = sys.add_place(std::move(p));
    }
  }

  std::map<std::pair<std::string, std::string>, int> in_binding, out_binding;
  struct PendingRelay {
    std::string name;
    int in_place;
    std::vector<std::pair<int, int>> outs;
  };
  std::vector<PendingRelay> relays;

  for (const auto& entry : entries) {
    const ColoredComponent* sender = find_component(entry.send.first);
    if (!sender)
      fail(ErrorKind::UnknownMember,
           "no colored component named '" + entry.send.first + "'");
    const ColoredComponent::Port* out_port = sender->find_port(entry.send.second);
    if (!out_port)
      fail(ErrorKind::PortTag, entry.id + ": sender '" + entry.send.first +
                                   "' has no port for event " +
                                   entry.send.second);
    if (out_port->tag != ColoredComponent::PortTag::Out)
      fail(ErrorKind::PortTag,
           entry.id + ": IN port '" + out_port->name +
               "' wired as the sending side");

    struct RecvSpec {
      const ColoredComponent* comp;
      const ColoredComponent::Port* port;
    };
    std::vector<RecvSpec> recvs;
    for (const auto& r : entry.receives) {
      const ColoredComponent* comp = find_component(r.first);
      if (!comp)
        fail(ErrorKind::UnknownMember,
             "no colored component named '" + r.first + "'");
      const ColoredComponent::Port* port = comp->find_port(r.second);
      if (!port)
        fail(ErrorKind::PortTag, entry.id + ": receiver '" + r.first +
                                     "' has no port for event " + r.second);
      if (port->tag != ColoredComponent::PortTag::In)
        fail(ErrorKind::PortTag, entry.id + ": OUT port '" + port->name +
                                     "' wired as a receiving side");
      if (!colors_compatible(out_port->color, port->color, taxonomy))
        fail(ErrorKind::ColorMismatch,
             entry.id + ": sender color " + out_port->color.render() +
                 " vs receiver color " + port->color.render());
      recvs.push_back({comp, port});
    }

    ColoredSystem::Place socket;
    socket.name = fresh_name(sys, entry.id);
    socket.color = out_port->color;
    socket.top_level = true;
    int socket_id = sys.add_place(std::move(socket));

    if (sender->instances == 1) {
      out_binding[{sender->name, entry.send.second}] = socket_id;
    } else {
      ColoredSystem::Place port_place;
      port_place.name =
          fresh_name(sys, sender->name + "." + out_port->name + ".out");
      port_place.color = out_port->color;
      int port_id = sys.add_place(std::move(port_place));
      out_binding[{sender->name, entry.send.second}] = port_id;
      relays.push_back({fresh_name(sys, "join_" + out_port->name),
                        port_id,
                        {{socket_id, 1}}});
    }

    if (recvs.size() == 1 && recvs[0].comp->instances == 1) {
      in_binding[{recvs[0].comp->name, recvs[0].port->event_id}] = socket_id;
    } else {
      PendingRelay fork{fresh_name(sys, "fork_" + out_port->name),
                        socket_id,
                        {}};
      for (const auto& r : recvs) {
        ColoredSystem::Place port_place;
        port_place.name =
            fresh_name(sys, r.comp->name + "." + r.port->name + ".in");
        port_place.color = r.port->color;
        int port_id = sys.add_place(std::move(port_place));
        in_binding[{r.comp->name, r.port->event_id}] = port_id;
        fork.outs.push_back({port_id, r.comp->instances});
      }
      relays.push_back(std::move(fork));
    }
  }

  // Ports no entry wired stay as local places.
  for (const auto& comp : sys.components) {
    for (const auto& port : comp.ports) {
      auto key = std::make_pair(comp.name, port.event_id);
      bool wired = port.tag == ColoredComponent::PortTag::In
                       ? in_binding.count(key) > 0
                       : out_binding.count(key) > 0;
      if (wired) continue;
      ColoredSystem::Place p;
      p.name = fresh_name(sys, comp.name + "." + port.name);
      p.color = port.color;
      int id = sys.add_place(std::move(p));
      if (port.tag == ColoredComponent::PortTag::In)
        in_binding[key] = id;
      else
        out_binding[key] = id;
    }
  }

  for (size_t ci = 0; ci < sys.components.size(); ++ci) {
    const ColoredComponent& comp = sys.components[ci];
    for (const auto& t : comp.transitions) {
      ColoredSystem::Transition rt;
      rt.name = comp.name + "." + t.name;
      rt.event = t.event_name;
      rt.component = static_cast<int>(ci);
      rt.state_in = state_place.at({comp.name, t.from_state});
      rt.state_out = state_place.at({comp.name, t.to_state});
      rt.guard = t.guard;
      rt.action = t.action;
      rt.params = t.params;
      rt.direction = t.direction;
      for (const auto& arc : t.sv_arcs)
        rt.svs.push_back({sv_place.at({comp.name, arc.sv}), arc.sv, arc.kind});
      if (t.direction == model::EventDirection::Receive)
        rt.port_in = in_binding.at({comp.name, t.event_id});
      else if (t.direction == model::EventDirection::Send)
        rt.port_out = out_binding.at({comp.name, t.event_id});
      sys.add_transition(std::move(rt));
    }
  }

  for (const auto& relay : relays) {
    ColoredSystem::Transition rt;
    rt.name = relay.name;
    rt.event = relay.name;
    rt.is_relay = true;
    rt.relay_in = relay.in_place;
    rt.relay_outs = relay.outs;
    sys.add_transition(std::move(rt));
  }

  return sys;
}

} // namespace cmv::colored
