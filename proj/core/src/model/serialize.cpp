#include <sstream>

#include "cmv/colored/expr.hpp"
#include "cmv/model/parse.hpp"

namespace cmv::model {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

void render_tags(std::ostringstream& out, const SemanticTags& tags,
                 const std::string& indent) {
  out << indent << "{\n";
  if (!tags.area_of_interest.empty()) {
    out << indent << "  aoi:";
    bool first = true;
    for (const auto& t : tags.area_of_interest) {
      out << (first ? " " : ", ") << quote(t);
      first = false;
    }
    out << "\n";
  }
  if (!tags.purpose.empty()) {
    out << indent << "  purpose:";
    bool first = true;
    for (const auto& t : tags.purpose) {
      out << (first ? " " : ", ") << quote(t);
      first = false;
    }
    out << "\n";
  }
  out << indent << "}\n";
}

} // namespace

std::string serialize(const ParsedComponent& parsed) {
  const BasicComponent& c = parsed.component;
  std::ostringstream out;
  out << "component " << c.name << " {\n";
  if (c.entity) {
    out << "  entity " << c.entity->name << " {\n";
    for (const auto& ch : c.entity->characteristics)
      out << "    " << ch.id << " " << ch.name << ": " << ch.type.render()
          << "\n";
    out << "  }\n";
  }
  out << "  events {\n";
  for (const auto& e : c.events) {
    out << "    " << e.id << " " << e.name << " from " << e.sender << " to";
    bool first = true;
    for (const auto& r : e.receivers) {
      out << (first ? " " : ", ") << r;
      first = false;
    }
    if (!e.parameters.empty()) {
      out << " (";
      for (size_t i = 0; i < e.parameters.size(); ++i) {
        if (i) out << ", ";
        out << e.parameters[i].name << ": " << e.parameters[i].type.render();
        if (e.parameters[i].unit) out << " unit " << quote(*e.parameters[i].unit);
      }
      out << ")";
    }
    out << "\n";
  }
  out << "  }\n  actions {\n";
  for (const auto& a : c.actions)
    out << "    " << a.id << " " << a.name << " uses " << a.event_id << "\n";
  out << "  }\n  states {\n";
  for (const auto& s : c.states) {
    out << "    " << s.name;
    if (s.is_initial) out << " initial";
    if (s.is_final) out << " final";
    if (s.is_goal) out << " goal";
    if (!s.exits.empty()) {
      out << " {";
      for (const auto& exit : s.exits)
        out << " on " << exit.action_id << " -> " << exit.next_state;
      out << " }";
    }
    out << "\n";
  }
  out << "  }\n";
  if (!c.action_tags.empty()) {
    out << "  semantics {\n";
    for (const auto& [id, tags] : c.action_tags) {
      out << "    action " << id << "\n";
      render_tags(out, tags, "    ");
    }
    out << "  }\n";
  }
  if (parsed.extension) {
    const ExtendedComponent& ext = *parsed.extension;
    out << "  extension {\n";
    if (!ext.state_variables.empty()) {
      out << "    variables {\n";
      for (const auto& sv : ext.state_variables)
        out << "      " << sv.name << ": " << sv.type.render() << " = "
            << sv.initial->render() << "\n";
      out << "    }\n";
    }
    if (!ext.transitions.empty()) {
      out << "    transitions {\n";
      for (const auto& t : ext.transitions) {
        out << "      from " << t.from_state << " on " << t.event_id;
        if (t.guard) out << " [" << t.guard->render() << "]";
        if (!t.action.empty()) out << " / " << colored::render_block(t.action);
        if (!t.inputs.empty()) {
          out << " in(";
          bool first = true;
          for (const auto& in : t.inputs) {
            out << (first ? "" : ", ") << in;
            first = false;
          }
          out << ")";
        }
        if (!t.outputs.empty()) {
          out << " out(";
          bool first = true;
          for (const auto& o : t.outputs) {
            out << (first ? "" : ", ") << o;
            first = false;
          }
          out << ")";
        }
        out << " -> " << t.to_state << "\n";
      }
      out << "    }\n";
    }
    out << "  }\n";
  }
  out << "}\n";
  return out.str();
}

std::string serialize(const ComposedComponent& comp) {
  std::ostringstream out;
  out << "composition " << comp.name << " {\n  members {\n";
  for (const auto& m : comp.members) {
    out << "    " << m.name;
    if (!m.source.empty()) out << " from " << quote(m.source);
    if (m.instances != 1) out << " instances " << m.instances;
    out << "\n";
  }
  out << "  }\n";
  if (!comp.act_in.empty()) {
    out << "  inputs {\n";
    for (const auto& a : comp.act_in)
      out << "    " << a.component << "." << a.action_id << "\n";
    out << "  }\n";
  }
  if (!comp.act_out.empty()) {
    out << "  outputs {\n";
    for (const auto& a : comp.act_out)
      out << "    " << a.component << "." << a.action_id << "\n";
    out << "  }\n";
  }
  out << "  poi {\n";
  for (const auto& entry : comp.poi) {
    out << "    POI " << entry.id << ": !" << entry.send.component << "."
        << entry.send.action_id << " -> ";
    for (size_t i = 0; i < entry.receives.size(); ++i) {
      if (i) out << ", ";
      out << "?" << entry.receives[i].component << "."
          << entry.receives[i].action_id;
    }
    out << "\n";
  }
  out << "  }\n";
  if (!comp.poi_tags.area_of_interest.empty() || !comp.poi_tags.purpose.empty()) {
    out << "  semantics";
    std::ostringstream tags;
    render_tags(tags, comp.poi_tags, "  ");
    out << tags.str().substr(2);
  }
  out << "}\n";
  return out.str();
}

std::string serialize(const RequirementSpec& spec) {
  std::ostringstream out;
  auto render_check = [&](const QueryRef& q) {
    switch (q.kind) {
      case QueryRef::Kind::None: break;
      case QueryRef::Kind::Builtin: out << " check " << q.name; break;
      case QueryRef::Kind::Exists:
        out << " check exists " << quote(q.predicate);
        break;
      case QueryRef::Kind::Never:
        out << " check never " << quote(q.predicate);
        break;
    }
  };
  for (const auto& o : spec.objectives) {
    out << "objective " << o.id << ": " << o.description;
    render_check(o.check);
    out << "\n";
  }
  for (const auto& c : spec.constraints) {
    out << "constraint " << c.id << ": " << c.description;
    render_check(c.check);
    out << "\n";
  }
  return out.str();
}

} // namespace cmv::model
