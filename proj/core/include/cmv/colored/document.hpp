#pragma once

#include <string>
#include <vector>

#include "cmv/colored/component.hpp"
#include "cmv/colored/wiring.hpp"

namespace cmv::colored {

// Colored-system document format: one component per file plus a top-level
// wiring file referencing them. Round-trips exactly.
std::string write_component(const ColoredComponent& c);
ColoredComponent read_component(const std::string& document,
                                const std::string& origin = "<colored>");

struct SystemDocument {
  std::string name;
  // (component name, relative file path)
  std::vector<std::pair<std::string, std::string>> members;
  std::vector<WireEntry> entries;
};

std::string write_wiring(const SystemDocument& doc);
SystemDocument read_wiring(const std::string& document,
                           const std::string& origin = "<wiring>");

// Writes component files ("<lowered name>.ccm") and the wiring file
// ("<lowered system name>.csys") into a directory; returns the wiring
// file path.
std::string save_system(const ColoredSystem& sys, const std::string& directory);
// Loads a wiring file, resolving member paths relative to it.
ColoredSystem load_system(const std::string& wiring_path);

} // namespace cmv::colored
