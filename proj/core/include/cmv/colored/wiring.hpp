#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmv/colored/system.hpp"
#include "cmv/match/taxonomy.hpp"

namespace cmv::colored {

// Assembles the runtime system: component-local places, one socket place
// per entry (fused with the port when the wiring is one-to-one), fork and
// join relays for fan-out/fan-in. Port colors must match exactly, or the
// sender's may be a DirectChild of the receiver's under the taxonomy.
ColoredSystem wire_system(const std::vector<ColoredComponent>& members,
                          const std::string& name,
                          const std::vector<WireEntry>& entries,
                          const match::Taxonomy* taxonomy = nullptr);

} // namespace cmv::colored
