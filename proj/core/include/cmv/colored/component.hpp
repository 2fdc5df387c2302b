#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmv/colored/expr.hpp"
#include "cmv/model/component.hpp"
#include "cmv/types.hpp"

namespace cmv::colored {

// Executable three-layer component: structural layer (typed state-variable
// places), behavioral layer (INT state places plus guarded transitions),
// communication layer (typed ports tagged IN/OUT).
struct ColoredComponent {
  struct SvPlace {
    std::string name;
    TypeName color;
    Value initial;
  };

  enum class ArcKind { In, Out, InOut };

  struct SvArc {
    std::string sv;
    ArcKind kind = ArcKind::In;
  };

  enum class PortTag { In, Out };

  struct Port {
    std::string event_id;
    std::string name; // event name
    // product of the event parameter types (NULL when there are none)
    TypeName color = TypeName::null();
    PortTag tag = PortTag::In;
  };

  struct Transition {
    std::string name;
    std::string from_state;
    std::string to_state;
    std::string event_id;
    std::string event_name;
    model::EventDirection direction = model::EventDirection::Internal;
    ExprPtr guard; // null = true
    std::vector<Stmt> action;
    std::vector<SvArc> sv_arcs;
    std::vector<std::string> params; // event parameter names, in order
  };

  std::string name;
  int instances = 1;

  std::vector<SvPlace> sv_places;       // structural layer
  std::vector<std::string> state_places; // behavioral layer (INT colored)
  std::string initial_state;
  std::vector<Transition> transitions;
  std::vector<Port> ports;              // communication layer

  const Port* find_port(const std::string& event_id) const;
  const SvPlace* find_sv(const std::string& name) const;
};

} // namespace cmv::colored
