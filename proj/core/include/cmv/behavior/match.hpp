#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "cmv/model/component.hpp"

namespace cmv::behavior {

// One executing state machine: a member instance of the composition.
struct MachineInstance {
  std::string component;
  int instance_id = 1;
  std::string current_state;
  std::set<std::string> visited_goals;

  std::string label() const;
};

struct TraceStep {
  std::string event;
  std::pair<std::string, int> sender;              // (component, instance)
  std::vector<std::pair<std::string, int>> receivers;
  // state movement per participant, sender first
  std::vector<std::string> from_states;
  std::vector<std::string> to_states;
};

struct MatchOutcome {
  enum class Kind { AllReached, Stuck, CycleWithoutGoal };
  Kind kind = Kind::AllReached;
  std::string configuration;      // Stuck: the dead configuration
  std::vector<std::string> cycle; // CycleWithoutGoal: configurations

  std::string render() const;
};

struct MatchTrace {
  std::vector<TraceStep> steps;
  MatchOutcome outcome;
  // configuration graph explored in exhaustive mode (configurations in
  // discovery order with joint-event arcs); empty for seeded runs
  std::vector<std::string> config_nodes;
  std::vector<std::tuple<int, int, std::string>> config_arcs;

  std::string render() const; // byte-stable serialization
  std::string to_dot() const;
};

struct MatchOptions {
  enum class Mode { Exhaustive, SingleSeeded };
  Mode mode = Mode::Exhaustive;
  std::uint64_t seed = 0;
  size_t max_steps = 10000; // seeded walks
};

// Executes all member machines concurrently at the event-label level.
// Each POI entry synchronizes one sender instance with one instance of
// every wired receiver component (rendezvous); instance selection is a
// nondeterministic branch.
//
// Exhaustive mode explores the full product automaton and reports
// AllReached when no stuck configuration is reachable and every bottom
// cycle covers all machines' goal states; seeded mode follows one
// uniformly random schedule.
MatchTrace run_matching(const model::ComposedComponent& c,
                        const MatchOptions& options = {});

// Per machine instance: pass iff a final state was reached or every goal
// state was visited at least once along the trace.
std::map<std::string, bool> goal_coverage(const MatchTrace& trace,
                                          const model::ComposedComponent& c);

} // namespace cmv::behavior
