#include "cmv/model/component.hpp"

#include <algorithm>

#include "cmv/diag.hpp"

namespace cmv::model {

TypeName EventDef::payload_type() const {
  if (parameters.empty()) return TypeName::null();
  if (parameters.size() == 1) return parameters.front().type;
  std::vector<TypeName> elems;
  elems.reserve(parameters.size());
  for (const auto& p : parameters) elems.push_back(p.type);
  return TypeName::tuple(std::move(elems));
}

const EventDef* BasicComponent::find_event(const Identifier& id) const {
  for (const auto& e : events)
    if (e.id == id) return &e;
  return nullptr;
}

const ActionDef* BasicComponent::find_action(const Identifier& id) const {
  for (const auto& a : actions)
    if (a.id == id) return &a;
  return nullptr;
}

const StateDef* BasicComponent::find_state(const Identifier& name) const {
  for (const auto& s : states)
    if (s.name == name) return &s;
  return nullptr;
}

const StateDef& BasicComponent::initial_state() const {
  for (const auto& s : states)
    if (s.is_initial) return s;
  fail(ErrorKind::Reference, "component '" + name + "' has no initial state");
}

EventDirection BasicComponent::direction(const EventDef& ev) const {
  bool is_sender = ev.sender == name;
  bool is_receiver = ev.receivers.count(name) > 0;
  if (is_sender && is_receiver) return EventDirection::Internal;
  if (is_sender) return EventDirection::Send;
  return EventDirection::Receive;
}

bool BasicComponent::sends(const ActionDef& action) const {
  const EventDef* ev = find_event(action.event_id);
  if (!ev) return false;
  EventDirection d = direction(*ev);
  return d == EventDirection::Send || d == EventDirection::Internal;
}

bool BasicComponent::receives(const ActionDef& action) const {
  const EventDef* ev = find_event(action.event_id);
  if (!ev) return false;
  EventDirection d = direction(*ev);
  return d == EventDirection::Receive || d == EventDirection::Internal;
}

std::vector<const StateDef*> BasicComponent::goal_states() const {
  std::vector<const StateDef*> out;
  for (const auto& s : states)
    if (s.is_goal) out.push_back(&s);
  return out;
}

std::vector<const StateDef*> BasicComponent::final_states() const {
  std::vector<const StateDef*> out;
  for (const auto& s : states)
    if (s.is_final) out.push_back(&s);
  return out;
}

namespace {
template <typename T, typename GetId>
void check_unique(const std::vector<T>& items, GetId get, const char* what,
                  const Identifier& owner) {
  std::set<Identifier> seen;
  for (const auto& item : items) {
    if (!seen.insert(get(item)).second)
      fail(ErrorKind::DuplicateId, std::string(what) + " '" + get(item) +
                                       "' duplicated in component '" + owner +
                                       "'");
  }
}
} // namespace

void BasicComponent::validate() const {
  check_unique(events, [](const EventDef& e) { return e.id; }, "event", name);
  check_unique(actions, [](const ActionDef& a) { return a.id; }, "action", name);
  check_unique(states, [](const StateDef& s) { return s.name; }, "state", name);
  if (entity)
    check_unique(entity->characteristics,
                 [](const Characteristic& c) { return c.id; }, "characteristic",
                 name);

  for (const auto& a : actions) {
    if (!find_event(a.event_id))
      fail(ErrorKind::Reference, "action '" + a.id + "' of '" + name +
                                     "' references unknown event '" +
                                     a.event_id + "'");
  }
  for (const auto& s : states) {
    for (const auto& exit : s.exits) {
      if (!find_action(exit.action_id))
        fail(ErrorKind::Reference, "state '" + s.name + "' of '" + name +
                                       "' exits on unknown action '" +
                                       exit.action_id + "'");
      if (!find_state(exit.next_state))
        fail(ErrorKind::Reference, "state '" + s.name + "' of '" + name +
                                       "' exits to unknown state '" +
                                       exit.next_state + "'");
    }
  }

  bool has_initial = std::any_of(states.begin(), states.end(),
                                 [](const StateDef& s) { return s.is_initial; });
  if (!has_initial)
    fail(ErrorKind::Reference, "component '" + name + "' has no initial state");

  bool has_terminal = std::any_of(states.begin(), states.end(),
                                  [](const StateDef& s) {
                                    return s.is_final || s.is_goal;
                                  });
  if (!has_terminal)
    fail(ErrorKind::Reference,
         "component '" + name + "' declares neither final nor goal states");
}

const StateVariable* ExtendedComponent::find_variable(
    const Identifier& name) const {
  for (const auto& v : state_variables)
    if (v.name == name) return &v;
  return nullptr;
}

void ExtendedComponent::validate_containment() const {
  // Extension adds but never removes: states and events of the base are the
  // extension's states/events (shared base), so only the exit-condition
  // refinement needs checking.
  for (const auto& state : base.states) {
    for (const auto& exit : state.exits) {
      const ActionDef* action = base.find_action(exit.action_id);
      bool found = false;
      for (const auto& t : transitions) {
        if (t.from_state == state.name && t.to_state == exit.next_state &&
            action && t.event_id == action->event_id) {
          found = true;
          break;
        }
      }
      if (!found)
        fail(ErrorKind::BaseMismatch,
             "extension of '" + base.name + "' drops exit (" + state.name +
                 ", " + exit.action_id + ", " + exit.next_state + ")");
    }
  }
  for (const auto& t : transitions) {
    if (!base.find_state(t.from_state) || !base.find_state(t.to_state))
      fail(ErrorKind::BaseMismatch, "extended transition of '" + base.name +
                                        "' uses a state missing from the base");
    if (!base.find_event(t.event_id))
      fail(ErrorKind::BaseMismatch, "extended transition of '" + base.name +
                                        "' uses unknown event '" + t.event_id +
                                        "'");
    for (const auto& in : t.inputs)
      if (!find_variable(in))
        fail(ErrorKind::Reference,
             "transition input '" + in + "' is not a state variable");
    for (const auto& out : t.outputs)
      if (!find_variable(out))
        fail(ErrorKind::Reference,
             "transition output '" + out + "' is not a state variable");
  }
}

const MemberRef* ComposedComponent::find_member(const Identifier& n) const {
  for (const auto& m : members)
    if (m.name == n) return &m;
  return nullptr;
}

void ComposedComponent::validate() const {
  std::set<Identifier> names;
  for (const auto& m : members) {
    if (!names.insert(m.name).second)
      fail(ErrorKind::DuplicateId, "member '" + m.name + "' listed twice");
    if (m.instances < 1)
      fail(ErrorKind::Reference,
           "member '" + m.name + "' must have at least one instance");
  }

  auto resolve = [&](const ActionRef& ref, bool want_send,
                     const Identifier& poi) {
    const MemberRef* member = find_member(ref.component);
    if (!member)
      fail(ErrorKind::UnknownMember,
           "POI " + poi + " references unknown member '" + ref.component + "'");
    const ActionDef* action = member->component.find_action(ref.action_id);
    if (!action)
      fail(ErrorKind::DanglingAction, "POI " + poi + " references action '" +
                                          ref.render() +
                                          "' absent from its member");
    if (want_send && !member->component.sends(*action))
      fail(ErrorKind::DanglingAction,
           "POI " + poi + " send side '" + ref.render() +
               "' is not a send-event action");
    if (!want_send && !member->component.receives(*action))
      fail(ErrorKind::DanglingAction,
           "POI " + poi + " receive side '" + ref.render() +
               "' is not a receive-event action");
  };

  std::set<Identifier> poi_ids;
  for (const auto& entry : poi) {
    if (!poi_ids.insert(entry.id).second)
      fail(ErrorKind::DuplicateId, "POI id '" + entry.id + "' duplicated");
    resolve(entry.send, true, entry.id);
    if (entry.receives.empty())
      fail(ErrorKind::DanglingAction,
           "POI " + entry.id + " has no receive actions");
    for (const auto& r : entry.receives) resolve(r, false, entry.id);
  }
}

const Constraint* RequirementSpec::find_constraint(ConstraintKind kind) const {
  for (const auto& c : constraints)
    if (c.kind == kind) return &c;
  return nullptr;
}

} // namespace cmv::model
