#pragma once

#include <string>

#include "cmv/space/graph.hpp"

namespace cmv::space {

struct ExportOptions {
  // Keep only top-level places in the node marking attribute.
  bool trim_to_top_level = false;
};

// Human-readable marking description of a node (used as the exported
// `marking` attribute and DOT tooltips).
std::string describe_marking(const StateGraph& g, int node,
                             const ExportOptions& options = {});

// GraphML with data keys `marking`, `retained`, `event`.
std::string to_graphml(const StateGraph& g, const ExportOptions& options = {});

// DOT with node labels = id, tooltip = marking description.
std::string to_dot(const StateGraph& g, const ExportOptions& options = {});

} // namespace cmv::space
