#pragma once

#include <optional>

#include "cmv/space/predicate.hpp"

namespace cmv::space {

struct ReduceOptions {
  // Which nodes to keep; defaults to "some top-level place is non-empty".
  std::optional<Predicate> retain;
};

struct ReduceStats {
  size_t nodes_before = 0, nodes_after = 0;
  size_t arcs_before = 0, arcs_after = 0;
  size_t self_arcs_dropped = 0;
  size_t duplicate_arcs_merged = 0;
  bool root_removed = false; // RootRemovedWarning

  std::string render() const;
};

// Compositional reduction: every non-retained node is removed, splicing a
// directed arc from each of its predecessors to each of its successors.
// Self-arcs produced by the collapse are dropped; duplicate arcs merge.
// Retained nodes keep their ids; when no root survives, the new roots are
// the retained nodes without retained predecessors (root_removed set).
StateGraph reduce_compositional(const StateGraph& g,
                                const ReduceOptions& options = {},
                                ReduceStats* stats = nullptr);

} // namespace cmv::space
