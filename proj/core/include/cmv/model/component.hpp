#pragma once

#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmv/colored/expr.hpp"
#include "cmv/types.hpp"

namespace cmv::model {

using Identifier = std::string;

struct Characteristic {
  Identifier id;
  Identifier name;
  TypeName type = TypeName::integer();
};

struct Entity {
  Identifier name;
  std::vector<Characteristic> characteristics;
};

struct Parameter {
  Identifier name;
  TypeName type = TypeName::integer();
  std::optional<std::string> unit;
};

// Direction of an event relative to the component that declares it.
enum class EventDirection { Send, Receive, Internal };

struct EventDef {
  Identifier id;
  Identifier name;
  Identifier sender;               // component name
  std::set<Identifier> receivers;  // component names
  std::vector<Parameter> parameters;

  // Product of parameter types in declaration order; the unit (NULL) type
  // when there are none, the bare type for a single parameter.
  TypeName payload_type() const;
};

struct ActionDef {
  Identifier id;
  Identifier name;
  Identifier event_id;
};

struct ExitRule {
  Identifier action_id;
  Identifier next_state;
};

struct StateDef {
  Identifier name;
  bool is_initial = false;
  bool is_final = false;
  bool is_goal = false;
  std::vector<ExitRule> exits;
};

struct SemanticTags {
  std::set<std::string> area_of_interest;
  std::set<std::string> purpose;
};

struct BasicComponent {
  Identifier name;
  std::optional<Entity> entity;
  std::vector<EventDef> events;
  std::vector<ActionDef> actions;
  std::vector<StateDef> states;
  std::map<Identifier, SemanticTags> action_tags; // keyed by action id

  const EventDef* find_event(const Identifier& id) const;
  const ActionDef* find_action(const Identifier& id) const;
  const StateDef* find_state(const Identifier& name) const;
  const StateDef& initial_state() const;

  // Send iff this component is the sender; Receive iff it is a receiver
  // but not the sender; Internal when it is both (self-directed event).
  EventDirection direction(const EventDef& ev) const;
  bool sends(const ActionDef& action) const;
  bool receives(const ActionDef& action) const;

  std::vector<const StateDef*> goal_states() const;
  std::vector<const StateDef*> final_states() const;

  // Internal well-formedness: unique ids, resolvable references, at least
  // one initial state, final-or-goal presence. Throws on violation.
  void validate() const;
};

// EFSM enrichment of a basic component.
struct StateVariable {
  Identifier name;
  TypeName type = TypeName::integer();
  std::optional<Value> initial;
};

struct ExtTransition {
  Identifier from_state;
  Identifier event_id;
  colored::ExprPtr guard;           // BOOL; null means true
  std::vector<colored::Stmt> action;
  std::set<Identifier> inputs;      // state-variable names read
  std::set<Identifier> outputs;     // state-variable names written
  Identifier to_state;
};

struct ExtendedComponent {
  BasicComponent base;
  std::vector<StateVariable> state_variables;
  std::vector<ExtTransition> transitions;

  const StateVariable* find_variable(const Identifier& name) const;

  // base < extension: every base state/event is present and every base
  // exit-condition has a matching extended transition.
  void validate_containment() const;
};

// Reference to a member action inside a composition: (component, action).
struct ActionRef {
  Identifier component;
  Identifier action_id;

  bool operator==(const ActionRef& o) const {
    return component == o.component && action_id == o.action_id;
  }
  bool operator<(const ActionRef& o) const {
    return component != o.component ? component < o.component
                                    : action_id < o.action_id;
  }
  std::string render() const { return component + "." + action_id; }
};

struct PoiEntry {
  Identifier id;
  ActionRef send;
  std::vector<ActionRef> receives;
};

struct MemberRef {
  Identifier name;
  std::string source; // path as written in the composition document
  int instances = 1;
  BasicComponent component;
  std::optional<ExtendedComponent> extension;
};

struct ComposedComponent {
  Identifier name;
  std::vector<MemberRef> members;
  std::vector<ActionRef> act_in;
  std::vector<ActionRef> act_out;
  std::vector<PoiEntry> poi;
  SemanticTags poi_tags;

  const MemberRef* find_member(const Identifier& name) const;
  bool closed() const { return act_in.empty() && act_out.empty(); }

  // POI wiring sanity: members exist, actions exist, send side is a
  // send-event action and receive sides are receive-event actions.
  void validate() const;
};

// Requirement specification <O, S>.
struct QueryRef {
  enum class Kind { None, Builtin, Exists, Never };
  Kind kind = Kind::None;
  std::string name;      // builtin name (fairness, deadlock_free, ...)
  std::string predicate; // predicate text for Exists/Never
};

struct Objective {
  Identifier id;
  std::string description;
  QueryRef check;
};

enum class ConstraintKind {
  S1Syntactic,
  S2StaticSemantic,
  S3aStateMachine,
  S3bTransformation,
  Custom,
};

struct Constraint {
  Identifier id;
  ConstraintKind kind = ConstraintKind::Custom;
  std::string description;
  QueryRef check;
};

struct RequirementSpec {
  std::vector<Objective> objectives;
  std::vector<Constraint> constraints;

  // The four mandatory constraints are always present; parse inserts them
  // when a document omits them.
  const Constraint* find_constraint(ConstraintKind kind) const;
};

} // namespace cmv::model
