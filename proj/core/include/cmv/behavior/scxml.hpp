#pragma once

#include <string>

#include "cmv/model/component.hpp"

namespace cmv::behavior {

// SCXML rendering of a component's state machine, kept for interop with
// statechart tooling. Transitions carry the event name of their exit
// action.
std::string to_scxml(const model::BasicComponent& c);

} // namespace cmv::behavior
