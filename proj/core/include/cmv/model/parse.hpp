#pragma once

#include <string>
#include <vector>

#include "cmv/model/component.hpp"

namespace cmv::model {

struct ParsedComponent {
  BasicComponent component;
  std::optional<ExtendedComponent> extension;
};

// Component DSL (one component per file). The extension block, when
// present, is parsed and type-checked against the base.
ParsedComponent parse_component_document(const std::string& document,
                                         const std::string& origin = "<component>");
BasicComponent parse_component(const std::string& document,
                               const std::string& origin = "<component>");

// Extension document: a bare `extension { ... }` block checked against an
// already-parsed base.
ExtendedComponent parse_extension(const std::string& document,
                                  const BasicComponent& base,
                                  const std::string& origin = "<extension>");

// Composition document; members must cover every name the document
// references. Member source paths in the document are recorded verbatim.
ComposedComponent parse_composition(const std::string& document,
                                    const std::vector<ParsedComponent>& members,
                                    const std::string& origin = "<composition>");

// Requirement document. The four mandatory constraints are inserted when
// missing.
RequirementSpec parse_requirements(const std::string& document,
                                   const std::string& origin = "<requirements>");

// File loaders. load_composition_file resolves member paths relative to
// the composition file's directory and loads them.
ParsedComponent load_component_file(const std::string& path);
ComposedComponent load_composition_file(const std::string& path);
RequirementSpec load_requirements_file(const std::string& path);

// Canonical serializers; parse(serialize(x)) is structurally x.
std::string serialize(const ParsedComponent& component);
std::string serialize(const ComposedComponent& composition);
std::string serialize(const RequirementSpec& spec);

} // namespace cmv::model
