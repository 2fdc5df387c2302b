#include "cmv/colored/document.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <sstream>

#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv::colored {

namespace {

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

const char* direction_word(model::EventDirection d) {
  switch (d) {
    case model::EventDirection::Send: return "send";
    case model::EventDirection::Receive: return "receive";
    case model::EventDirection::Internal: return "internal";
  }
  return "?";
}

const char* kind_word(ColoredComponent::ArcKind k) {
  switch (k) {
    case ColoredComponent::ArcKind::In: return "in";
    case ColoredComponent::ArcKind::Out: return "out";
    case ColoredComponent::ArcKind::InOut: return "inout";
  }
  return "?";
}

std::string lowered(const std::string& name) {
  std::string out;
  for (char c : name)
    out += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

} // namespace

std::string write_component(const ColoredComponent& c) {
  std::ostringstream out;
  out << "colored-component " << c.name;
  if (c.instances != 1) out << " instances " << c.instances;
  out << " {\n";

  out << "  structural {\n";
  for (const auto& sv : c.sv_places)
    out << "    " << sv.name << ": " << sv.color.render() << " = "
        << sv.initial.render() << "\n";
  out << "  }\n";

  out << "  behavioral {\n    states {";
  for (size_t i = 0; i < c.state_places.size(); ++i) {
    out << (i ? ", " : " ") << c.state_places[i];
    if (c.state_places[i] == c.initial_state) out << " initial";
  }
  out << " }\n";
  for (const auto& t : c.transitions) {
    out << "    transition " << quote(t.name) << " {\n";
    out << "      from " << t.from_state << " to " << t.to_state << "\n";
    out << "      event " << t.event_id << " " << t.event_name << " "
        << direction_word(t.direction);
    if (!t.params.empty()) {
      out << " (";
      for (size_t i = 0; i < t.params.size(); ++i) {
        if (i) out << ", ";
        out << t.params[i];
      }
      out << ")";
    }
    out << "\n";
    if (t.guard) out << "      guard [" << t.guard->render() << "]\n";
    if (!t.action.empty())
      out << "      action " << render_block(t.action) << "\n";
    for (const auto& arc : t.sv_arcs)
      out << "      sv " << arc.sv << " " << kind_word(arc.kind) << "\n";
    out << "    }\n";
  }
  out << "  }\n";

  out << "  communication {\n";
  for (const auto& p : c.ports)
    out << "    port " << p.event_id << " " << p.name << " "
        << (p.tag == ColoredComponent::PortTag::In ? "IN" : "OUT") << " "
        << p.color.render() << "\n";
  out << "  }\n}\n";
  return out.str();
}

ColoredComponent read_component(const std::string& document,
                                const std::string& origin) {
  text::Scanner s(document, origin);
  ColoredComponent c;
  s.expect_keyword("colored-component");
  c.name = s.expect_identifier("component name");
  if (s.try_keyword("instances"))
    c.instances = static_cast<int>(s.expect_integer());
  s.expect('{');

  while (!s.try_consume('}')) {
    if (s.try_keyword("structural")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        ColoredComponent::SvPlace sv{"", TypeName::integer(),
                                     Value::integer(0)};
        sv.name = s.expect_identifier("state variable");
        s.expect(':');
        // type text runs until '='
        std::string type_text;
        while (!s.at_end() && s.peek() != '=') type_text += s.get();
        sv.color = parse_type(text::trim(type_text));
        s.expect('=');
        sv.initial = eval_const(parse_expr(s), sv.color);
        c.sv_places.push_back(std::move(sv));
      }
    } else if (s.try_keyword("behavioral")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        if (s.try_keyword("states")) {
          s.expect('{');
          while (!s.try_consume('}')) {
            std::string st = s.expect_identifier("state name");
            if (s.try_keyword("initial")) c.initial_state = st;
            c.state_places.push_back(st);
            s.try_consume(',');
          }
        } else if (s.try_keyword("transition")) {
          ColoredComponent::Transition t;
          t.name = s.expect_string();
          s.expect('{');
          while (!s.try_consume('}')) {
            if (s.try_keyword("from")) {
              t.from_state = s.expect_identifier("state");
              s.expect_keyword("to");
              t.to_state = s.expect_identifier("state");
            } else if (s.try_keyword("event")) {
              t.event_id = s.expect_identifier("event id");
              t.event_name = s.expect_identifier("event name");
              if (s.try_keyword("send"))
                t.direction = model::EventDirection::Send;
              else if (s.try_keyword("receive"))
                t.direction = model::EventDirection::Receive;
              else if (s.try_keyword("internal"))
                t.direction = model::EventDirection::Internal;
              else
                fail(ErrorKind::Syntax,
                     "expected a direction at " + s.context());
              if (s.try_consume('(')) {
                if (!s.try_consume(')')) {
                  for (;;) {
                    t.params.push_back(s.expect_identifier("parameter"));
                    if (s.try_consume(')')) break;
                    s.expect(',');
                  }
                }
              }
            } else if (s.try_keyword("guard")) {
              s.expect('[');
              t.guard = parse_expr(s);
              s.expect(']');
            } else if (s.try_keyword("action")) {
              t.action = parse_block(s);
            } else if (s.try_keyword("sv")) {
              ColoredComponent::SvArc arc;
              arc.sv = s.expect_identifier("state variable");
              if (s.try_keyword("inout"))
                arc.kind = ColoredComponent::ArcKind::InOut;
              else if (s.try_keyword("in"))
                arc.kind = ColoredComponent::ArcKind::In;
              else if (s.try_keyword("out"))
                arc.kind = ColoredComponent::ArcKind::Out;
              else
                fail(ErrorKind::Syntax, "expected an arc kind at " + s.context());
              t.sv_arcs.push_back(std::move(arc));
            } else {
              fail(ErrorKind::Syntax,
                   "unknown transition item at " + s.context());
            }
          }
          c.transitions.push_back(std::move(t));
        } else {
          fail(ErrorKind::Syntax, "unknown behavioral item at " + s.context());
        }
      }
    } else if (s.try_keyword("communication")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        s.expect_keyword("port");
        ColoredComponent::Port p;
        p.event_id = s.expect_identifier("event id");
        p.name = s.expect_identifier("event name");
        if (s.try_keyword("IN"))
          p.tag = ColoredComponent::PortTag::In;
        else if (s.try_keyword("OUT"))
          p.tag = ColoredComponent::PortTag::Out;
        else
          fail(ErrorKind::Syntax, "expected IN or OUT at " + s.context());
        std::string type_text;
        while (!s.at_end() && s.peek() != '\n') type_text += s.get();
        p.color = parse_type(text::trim(type_text));
        c.ports.push_back(std::move(p));
      }
    } else {
      fail(ErrorKind::Syntax, "unknown section at " + s.context());
    }
  }

  // Re-typecheck guards and actions so empty-sequence literals regain
  // their contextual types after the round trip.
  for (auto& t : c.transitions) {
    TypeEnv env;
    for (const auto& arc : t.sv_arcs) {
      const auto* sv = c.find_sv(arc.sv);
      if (!sv)
        fail(ErrorKind::Reference,
             "sv-arc references unknown variable '" + arc.sv + "'");
      env.emplace(sv->name, sv->color);
    }
    const ColoredComponent::Port* port = c.find_port(t.event_id);
    if (port && t.direction == model::EventDirection::Receive) {
      if (t.params.size() == 1) {
        env.emplace(t.params[0], port->color);
      } else if (!t.params.empty()) {
        for (size_t i = 0; i < t.params.size(); ++i)
          env.emplace(t.params[i], port->color.elements()[i]);
      }
    }
    if (t.guard) typecheck(t.guard, env);
    for (const auto& stmt : t.action) {
      std::optional<TypeName> expected;
      if (const auto* sv = c.find_sv(stmt.target)) expected = sv->color;
      TypeName vt = typecheck(stmt.value, env, expected);
      env.insert_or_assign(stmt.target, vt);
    }
  }
  return c;
}

std::string write_wiring(const SystemDocument& doc) {
  std::ostringstream out;
  out << "colored-system " << doc.name << " {\n  members {\n";
  for (const auto& [name, path] : doc.members)
    out << "    " << name << " from " << quote(path) << "\n";
  out << "  }\n  wiring {\n";
  for (const auto& e : doc.entries) {
    out << "    socket " << e.id << ": !" << e.send.first << "."
        << e.send.second << " ->";
    for (size_t i = 0; i < e.receives.size(); ++i)
      out << (i ? ", ?" : " ?") << e.receives[i].first << "."
          << e.receives[i].second;
    out << "\n";
  }
  out << "  }\n}\n";
  return out.str();
}

SystemDocument read_wiring(const std::string& document,
                           const std::string& origin) {
  SystemDocument doc;
  text::Scanner s(document, origin);
  s.expect_keyword("colored-system");
  doc.name = s.expect_identifier("system name");
  s.expect('{');
  while (!s.try_consume('}')) {
    if (s.try_keyword("members")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        std::string name = s.expect_identifier("member name");
        s.expect_keyword("from");
        doc.members.push_back({name, s.expect_string()});
      }
    } else if (s.try_keyword("wiring")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        s.expect_keyword("socket");
        WireEntry e;
        e.id = s.expect_identifier("socket id");
        s.expect(':');
        s.expect('!');
        e.send.first = s.expect_identifier("component");
        s.expect('.');
        e.send.second = s.expect_identifier("event id");
        s.expect('-');
        s.expect('>');
        for (;;) {
          s.expect('?');
          std::string comp = s.expect_identifier("component");
          s.expect('.');
          e.receives.push_back({comp, s.expect_identifier("event id")});
          if (!s.try_consume(',')) break;
        }
        doc.entries.push_back(std::move(e));
      }
    } else {
      fail(ErrorKind::Syntax, "unknown wiring section at " + s.context());
    }
  }
  return doc;
}

std::string save_system(const ColoredSystem& sys,
                        const std::string& directory) {
  namespace fs = std::filesystem;
  fs::create_directories(directory);
  SystemDocument doc;
  doc.name = sys.name;
  for (const auto& comp : sys.components) {
    std::string file = lowered(comp.name) + ".ccm";
    text::write_file((fs::path(directory) / file).string(),
                     write_component(comp));
    doc.members.push_back({comp.name, file});
  }
  doc.entries = sys.wiring;
  std::string wiring_path =
      (fs::path(directory) / (lowered(sys.name) + ".csys")).string();
  text::write_file(wiring_path, write_wiring(doc));
  return wiring_path;
}

ColoredSystem load_system(const std::string& wiring_path) {
  namespace fs = std::filesystem;
  SystemDocument doc = read_wiring(text::read_file(wiring_path), wiring_path);
  fs::path base = fs::path(wiring_path).parent_path();
  std::vector<ColoredComponent> members;
  for (const auto& [name, rel] : doc.members) {
    fs::path p = fs::path(rel).is_absolute() ? fs::path(rel) : base / rel;
    ColoredComponent comp = read_component(text::read_file(p.string()),
                                           p.string());
    if (comp.name != name)
      fail(ErrorKind::UnknownMember, "file " + p.string() + " defines '" +
                                         comp.name + "', expected '" + name +
                                         "'");
    members.push_back(std::move(comp));
  }
  return wire_system(members, doc.name, doc.entries);
}

} // namespace cmv::colored
