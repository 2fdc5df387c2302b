#pragma once

#include <string>
#include <vector>

#include "cmv/match/taxonomy.hpp"
#include "cmv/model/component.hpp"

namespace cmv::match {

struct Violation {
  std::string rule;    // "SM-Rule1" ... "SSM-Rule4"
  std::string subject; // event/action pair description
  std::string detail;
};

struct MatchReport {
  enum class Level { Syntactic, StaticSemantic };
  Level level = Level::Syntactic;
  std::vector<Violation> violations;

  bool pass() const { return violations.empty(); }
  std::string render() const;
  std::string to_json() const;
};

// S1: SM-Rule 1 (event names equal across each pairing), SM-Rule 2
// (send/receive pairs complete), SM-Rule 3 (parameter counts equal).
// All pairings are evaluated; violations accumulate.
MatchReport check_syntactic(const model::ComposedComponent& c);

// S2: SSM-Rules 1-4 over action semantic tags, parameter types and units.
// Assumes check_syntactic passed.
MatchReport check_static_semantic(const model::ComposedComponent& c,
                                  const Taxonomy& taxonomy);

} // namespace cmv::match
