#pragma once

#include <cstdint>
#include <vector>

#include "cmv/petri/net.hpp"

namespace cmv::petri {

// Non-negative integer semi-flow. Place invariants satisfy A.y = 0, and
// transition invariants A^T.x = 0, exactly (integer arithmetic). Stored
// vectors are gcd-normalized.
struct Invariant {
  enum class Kind { Place, Transition };
  Kind kind;
  std::vector<std::int64_t> vec;
  bool minimal = false;

  bool operator==(const Invariant& o) const {
    return kind == o.kind && vec == o.vec;
  }
};

struct InvariantSet {
  // Everything the Farkas elimination emitted (gcd-normalized, deduped).
  std::vector<Invariant> raw;
  // After minimal-support filtering: pairwise non-comparable elementwise.
  std::vector<Invariant> minimal;
};

InvariantSet p_invariants(const PlaceTransitionNet& net);
InvariantSet t_invariants(const PlaceTransitionNet& net);

// Bounded fairness per the reproduction-vector criterion: exactly one
// minimal T-invariant, every entry positive, A.X >= 0, and at least one
// P-invariant (structural boundedness evidence).
struct FairnessVerdict {
  enum class Reason {
    None,
    MultipleReproductionVectors,
    ZeroEntry,
    NotStructurallyBounded,
  };
  bool fair = false;
  Reason reason = Reason::None;
  std::vector<std::int64_t> reproduction_vector; // set when unique

  std::string render() const;
};

FairnessVerdict check_b_fairness(const PlaceTransitionNet& net);

} // namespace cmv::petri
