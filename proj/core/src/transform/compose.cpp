#include "cmv/colored/wiring.hpp"
#include "cmv/diag.hpp"
#include "cmv/transform/transform.hpp"

namespace cmv::transform {

using colored::ColoredComponent;
using colored::ColoredSystem;
using model::ComposedComponent;
using model::EventDirection;

ColoredSystem compose_colored(const std::vector<ColoredComponent>& members,
                              const ComposedComponent& c,
                              const match::Taxonomy* taxonomy) {
  std::vector<colored::WireEntry> entries;
  for (const auto& entry : c.poi) {
    const model::MemberRef* sender_ref = c.find_member(entry.send.component);
    const model::ActionDef* send_action =
        sender_ref->component.find_action(entry.send.action_id);
    const model::EventDef* send_event =
        sender_ref->component.find_event(send_action->event_id);
    if (sender_ref->component.direction(*send_event) ==
        EventDirection::Internal)
      continue; // self-directed events stay local transitions

    colored::WireEntry wire;
    wire.id = entry.id;
    wire.send = {entry.send.component, send_event->id};
    for (const auto& r : entry.receives) {
      const model::MemberRef* m = c.find_member(r.component);
      const model::ActionDef* a = m->component.find_action(r.action_id);
      wire.receives.push_back({r.component, a->event_id});
    }
    entries.push_back(std::move(wire));
  }
  return colored::wire_system(members, c.name, entries, taxonomy);
}

ColoredSystem composition_to_colored(const ComposedComponent& c,
                                     TransformationLog* log,
                                     const match::Taxonomy* taxonomy) {
  std::vector<ColoredComponent> members;
  for (const auto& member : c.members) {
    if (!member.extension)
      fail(ErrorKind::Type, "member '" + member.name +
                                "' has no extension; the colored path needs "
                                "extended components");
    auto [comp, comp_log] =
        extended_to_colored(*member.extension, member.instances);
    if (log) {
      log->mappings.insert(log->mappings.end(), comp_log.mappings.begin(),
                           comp_log.mappings.end());
      log->omissions.insert(log->omissions.end(), comp_log.omissions.begin(),
                            comp_log.omissions.end());
    }
    members.push_back(std::move(comp));
  }
  return compose_colored(members, c, taxonomy);
}

} // namespace cmv::transform
