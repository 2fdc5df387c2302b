#pragma once

#include <string>

#include "cmv/petri/net.hpp"

namespace cmv::petri {

// P/T subset of PNML: place (with initialMarking), transition, arc (with
// inscription weight). Ids double as display names on export; on import
// the <name><text> label wins over the id when present.
std::string to_pnml(const PlaceTransitionNet& net, const std::string& net_id = "net0");
PlaceTransitionNet from_pnml(const std::string& document);

PlaceTransitionNet load_pnml_file(const std::string& path);
void save_pnml_file(const PlaceTransitionNet& net, const std::string& path);

} // namespace cmv::petri
