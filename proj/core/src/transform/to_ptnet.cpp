#include <algorithm>
#include <sstream>

#include "cmv/diag.hpp"
#include "cmv/transform/transform.hpp"

namespace cmv::transform {

using model::ComposedComponent;
using model::EventDirection;

bool TransformationLog::maps_source(const std::string& source) const {
  return std::any_of(mappings.begin(), mappings.end(),
                     [&](const Mapping& m) { return m.source == source; });
}

std::string TransformationLog::render() const {
  std::ostringstream out;
  for (const auto& m : mappings)
    out << m.source << " -> " << m.target << " [" << m.rule << "]\n";
  for (const auto& o : omissions) out << "omitted: " << o << "\n";
  return out.str();
}

namespace {

std::string instance_label(const model::MemberRef& member, int instance) {
  if (member.instances == 1) return member.name;
  return member.name + "#" + std::to_string(instance);
}

struct ExitPair {
  std::string from, to;
};

std::vector<ExitPair> exits_for_action(const model::BasicComponent& c,
                                       const std::string& action_id) {
  std::vector<ExitPair> out;
  for (const auto& st : c.states)
    for (const auto& exit : st.exits)
      if (exit.action_id == action_id) out.push_back({st.name, exit.next_state});
  return out;
}

} // namespace

std::pair<petri::PlaceTransitionNet, TransformationLog> composition_to_ptnet(
    const ComposedComponent& c) {
  petri::PlaceTransitionNet net;
  TransformationLog log;

  // Every state of every member instance becomes a place; the instance's
  // entity is the token on its initial state.
  for (const auto& member : c.members) {
    for (int inst = 1; inst <= member.instances; ++inst) {
      std::string prefix = instance_label(member, inst);
      for (const auto& st : member.component.states) {
        std::string place = prefix + "." + st.name;
        net.add_place(place, st.is_initial ? 1 : 0);
        log.mappings.push_back(
            {member.name + "." + st.name, place, "state->place"});
        if (st.is_initial)
          log.mappings.push_back(
              {member.name + " entity", place + " token", "entity->token"});
      }
    }
  }

  // Wiring completeness: in a closed composition every directed event of
  // every member must be covered by the interplay.
  if (c.closed()) {
    for (const auto& member : c.members) {
      for (const auto& action : member.component.actions) {
        const model::EventDef* ev =
            member.component.find_event(action.event_id);
        bool wired = false;
        for (const auto& entry : c.poi) {
          if (entry.send.component == member.name &&
              entry.send.action_id == action.id)
            wired = true;
          for (const auto& r : entry.receives)
            if (r.component == member.name && r.action_id == action.id)
              wired = true;
        }
        if (!wired)
          fail(ErrorKind::UnpairedEvent,
               member.name + "." + ev->name +
                   " has no POI pairing in a closed composition");
      }
    }
  }

  // One shared transition per POI pairing. Instance fan-out expands into
  // one transition per (sender instance, receiver instance selection);
  // with single instances and single exits this is exactly one transition
  // per entry.
  for (const auto& entry : c.poi) {
    const model::MemberRef* sender = c.find_member(entry.send.component);
    const model::ActionDef* send_action =
        sender->component.find_action(entry.send.action_id);
    const model::EventDef* event =
        sender->component.find_event(send_action->event_id);
    std::vector<ExitPair> sender_exits =
        exits_for_action(sender->component, entry.send.action_id);
    if (sender_exits.empty()) {
      log.omissions.push_back(entry.id + ": send action " +
                              entry.send.render() +
                              " is not used by any exit-condition");
      continue;
    }

    // Receivers other than the sender action itself; a self-directed event
    // shares the sender's exits.
    struct Recv {
      const model::MemberRef* member;
      std::vector<ExitPair> exits;
    };
    std::vector<Recv> receivers;
    bool broken = false;
    for (const auto& r : entry.receives) {
      if (r.component == entry.send.component &&
          r.action_id == entry.send.action_id)
        continue;
      const model::MemberRef* m = c.find_member(r.component);
      Recv recv{m, exits_for_action(m->component, r.action_id)};
      if (recv.exits.empty()) {
        log.omissions.push_back(entry.id + ": receive action " + r.render() +
                                " is not used by any exit-condition");
        broken = true;
      }
      receivers.push_back(std::move(recv));
    }
    if (broken) continue;

    size_t total_variants = sender->instances * sender_exits.size();
    for (const auto& r : receivers)
      total_variants *= r.member->instances * r.exits.size();

    int variant = 0;
    for (int sender_inst = 1; sender_inst <= sender->instances; ++sender_inst) {
      for (const auto& sender_exit : sender_exits) {
        std::vector<std::pair<int, size_t>> pick(receivers.size(), {1, 0});
        for (;;) {
          std::string tname = event->name;
          if (total_variants > 1) tname += "#" + std::to_string(++variant);

          net.add_transition(tname);
          std::string sender_prefix = instance_label(*sender, sender_inst);
          net.add_arc_pt(sender_prefix + "." + sender_exit.from, tname);
          net.add_arc_tp(tname, sender_prefix + "." + sender_exit.to);
          log.mappings.push_back(
              {sender->name + "." + event->name, tname, "event->transition"});
          log.mappings.push_back({sender->name + "." + send_action->id, tname,
                                  "action->transition"});
          log.mappings.push_back(
              {sender->name + " exit(" + sender_exit.from + "," +
                   send_action->id + "," + sender_exit.to + ")",
               tname + " arcs", "exit->arcs"});

          for (size_t i = 0; i < receivers.size(); ++i) {
            const Recv& r = receivers[i];
            auto [inst, exit_idx] = pick[i];
            const ExitPair& e = r.exits[exit_idx];
            std::string prefix = instance_label(*r.member, inst);
            net.add_arc_pt(prefix + "." + e.from, tname);
            net.add_arc_tp(tname, prefix + "." + e.to);
            log.mappings.push_back(
                {r.member->name + " exit(" + e.from + ",?," + e.to + ")",
                 tname + " arcs", "exit->arcs"});
          }

          size_t k = receivers.size();
          for (;;) {
            if (k == 0) goto next_sender_exit;
            --k;
            auto& [inst, exit_idx] = pick[k];
            if (++exit_idx < receivers[k].exits.size()) break;
            exit_idx = 0;
            if (++inst <= receivers[k].member->instances) break;
            inst = 1;
          }
        }
      next_sender_exit:;
      }
    }
  }

  return {std::move(net), std::move(log)};
}

} // namespace cmv::transform
