#pragma once

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cmv/colored/engine.hpp"

namespace cmv::colored {

struct SimStep {
  std::string transition;
  std::string event;
  std::string descriptor;
  std::int64_t instance = 0;
};

struct SimTrace {
  std::vector<SimStep> steps;
  bool deadlocked = false; // NoEnabledBinding terminated the run
  std::string final_marking_key;

  std::string render() const; // byte-stable
};

// Automatic mode: uniform seeded pick among enabled bindings each step.
SimTrace simulate_auto(const ColoredSystem& sys, std::uint64_t seed,
                       size_t max_steps);
SimTrace simulate_auto(const ColoredSystem& sys, std::uint64_t seed,
                       size_t max_steps, SystemMarking& marking);

// Interactive mode: the chooser sees the numbered enabled bindings and
// returns the index to fire; nullopt stops the session.
using BindingChooser = std::function<std::optional<size_t>(
    const SystemMarking&, const std::vector<Binding>&)>;
SimTrace simulate_interactive(const ColoredSystem& sys, BindingChooser choose,
                              size_t max_steps);

// Builds a one-component system whose ports stay local places, used for
// functional testing in isolation.
ColoredSystem isolate(const ColoredComponent& component);

// Feeds the stimuli to the IN ports, runs to quiescence (deterministic
// first-binding schedule), then evaluates the expectation against the
// tokens accumulated at OUT ports (keyed by event name).
using OutTokens = std::map<std::string, std::vector<Value>>;
bool functional_test(const ColoredComponent& component,
                     const std::map<std::string, std::vector<Value>>& stimuli,
                     const std::function<bool(const OutTokens&)>& expected,
                     size_t max_steps = 1000);

} // namespace cmv::colored
