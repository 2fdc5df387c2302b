#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cmv/colored/system.hpp"

namespace cmv::colored {

// An enabled (transition, token selection, choice resolution) with its
// token deltas fully computed. Firing re-checks the consumed tokens, so a
// binding from a stale marking raises StaleBindingError.
struct Binding {
  int transition = -1;
  std::int64_t instance = 0;
  std::vector<std::pair<int, Value>> consumed;
  std::vector<std::pair<int, Value>> produced;
  std::string descriptor;

  std::string event(const ColoredSystem& sys) const;
};

// All enabled bindings in canonical order (transition id, instance, sorted
// token values, choice-script order). Every choose branch contributes its
// own binding.
std::vector<Binding> enabled_bindings(const ColoredSystem& sys,
                                      const SystemMarking& m);

// Simulation flavor: choose picks are resolved through the generator, one
// binding per (transition, token selection).
std::vector<Binding> enabled_bindings(const ColoredSystem& sys,
                                      const SystemMarking& m,
                                      std::mt19937_64& rng);

SystemMarking fire_binding(const ColoredSystem& sys, const SystemMarking& m,
                           const Binding& b);

} // namespace cmv::colored
