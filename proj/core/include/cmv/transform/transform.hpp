#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cmv/colored/system.hpp"
#include "cmv/match/taxonomy.hpp"
#include "cmv/model/component.hpp"
#include "cmv/petri/net.hpp"

namespace cmv::transform {

// Records which source element produced which target element under which
// rule; a non-empty omission list fails S3b.
struct TransformationLog {
  struct Mapping {
    std::string source;
    std::string target;
    std::string rule;
  };
  std::vector<Mapping> mappings;
  std::vector<std::string> omissions;

  bool maps_source(const std::string& source) const;
  std::string render() const;
};

// Flattens a closed composition into a place/transition net: one place per
// member-instance state, one shared transition per POI pairing (expanded
// per instance selection), one token per member instance on its initial
// state. Throws UnpairedEventError when a closed composition leaves an
// event unwired.
std::pair<petri::PlaceTransitionNet, TransformationLog> composition_to_ptnet(
    const model::ComposedComponent& c);

// Extension -> executable colored component (structural/behavioral/
// communication layers).
std::pair<colored::ColoredComponent, TransformationLog> extended_to_colored(
    const model::ExtendedComponent& e, int instances = 1);

// Wires colored components through one socket place per POI entry; fork
// and join relays are inserted for one-to-many and many-to-one wiring.
// Port colors must agree (or relate as DirectChild through the optional
// taxonomy, sender to receiver).
colored::ColoredSystem compose_colored(
    const std::vector<colored::ColoredComponent>& members,
    const model::ComposedComponent& c,
    const match::Taxonomy* taxonomy = nullptr);

// Builds the full colored system of a composition (every member extended).
colored::ColoredSystem composition_to_colored(
    const model::ComposedComponent& c, TransformationLog* log = nullptr,
    const match::Taxonomy* taxonomy = nullptr);

struct S3bReport {
  bool pass = false;
  std::vector<std::string> issues;
  std::string render() const;
};

// Structure preservation for the P/T path: complete log, goal places
// reachable during execution.
S3bReport check_s3b_ptnet(const model::ComposedComponent& c,
                          const petri::PlaceTransitionNet& net,
                          const TransformationLog& log,
                          size_t node_budget = 200000);

// Structure preservation for one colored component.
S3bReport check_s3b_colored(const model::ExtendedComponent& source,
                            const colored::ColoredComponent& target,
                            const TransformationLog& log);

// Composed execution evidence: a seeded run reaches every member's goal
// (or final) states and only fires communication transitions wired by the
// POI (true by construction; verified against the trace).
S3bReport check_s3b_system(const model::ComposedComponent& c,
                           const colored::ColoredSystem& sys,
                           std::uint64_t seed, size_t max_steps = 20000);

} // namespace cmv::transform
