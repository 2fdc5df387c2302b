#pragma once

#include "cmv/colored/system.hpp"
#include "cmv/petri/net.hpp"
#include "cmv/space/graph.hpp"

namespace cmv::space {

struct GenerateOptions {
  size_t node_budget = 200000;
  // Collapse non-retained markings during generation instead of post hoc:
  // only markings with a non-empty top-level place get full node payloads.
  bool on_the_fly = false;
};

// BFS with canonical-marking hashing and deterministic node numbering.
StateGraph generate(const colored::ColoredSystem& sys,
                    const GenerateOptions& options = {});
StateGraph generate(const petri::PlaceTransitionNet& net,
                    const GenerateOptions& options = {});

} // namespace cmv::space
