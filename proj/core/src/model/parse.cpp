#include "cmv/model/parse.hpp"

#include <algorithm>
#include <filesystem>

#include "cmv/colored/expr.hpp"
#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv::model {

namespace {

using text::Scanner;

TypeName parse_type_at(Scanner& s) {
  // Re-lex the type through the shared grammar. Types appear after ':'.
  s.skip_ws();
  std::string collected;
  // Greedily take one type term: IDENT possibly followed by a balanced
  // parenthesized argument list (tuple/seq).
  std::string head = s.expect_identifier("a type");
  collected = head;
  s.skip_ws();
  if ((head == "tuple" || head == "seq") && s.peek() == '(') {
    int depth = 0;
    do {
      char c = s.get();
      collected += c;
      if (c == '(') ++depth;
      if (c == ')') --depth;
    } while (depth > 0 && !s.at_end());
  }
  return parse_type(collected);
}

std::string parse_term(Scanner& s) {
  if (s.peek_string()) return s.expect_string();
  return s.expect_identifier("a term");
}

std::vector<std::string> parse_term_list(Scanner& s) {
  std::vector<std::string> out;
  out.push_back(parse_term(s));
  while (s.try_consume(',')) out.push_back(parse_term(s));
  return out;
}

void parse_entity(Scanner& s, BasicComponent& c) {
  Entity entity;
  entity.name = s.expect_identifier("entity name");
  s.expect('{');
  while (!s.try_consume('}')) {
    Characteristic ch;
    ch.id = s.expect_identifier("characteristic id");
    ch.name = s.expect_identifier("characteristic name");
    s.expect(':');
    ch.type = parse_type_at(s);
    entity.characteristics.push_back(std::move(ch));
  }
  if (c.entity)
    fail(ErrorKind::DuplicateId,
         "component '" + c.name + "' declares more than one entity");
  c.entity = std::move(entity);
}

void parse_events(Scanner& s, BasicComponent& c) {
  s.expect('{');
  while (!s.try_consume('}')) {
    EventDef ev;
    ev.id = s.expect_identifier("event id");
    ev.name = s.expect_identifier("event name");
    s.expect_keyword("from");
    ev.sender = s.expect_identifier("sender component");
    s.expect_keyword("to");
    ev.receivers.insert(s.expect_identifier("receiver component"));
    while (s.try_consume(',')) {
      // Lookahead: a receiver list entry is IDENT not followed by ':'.
      ev.receivers.insert(s.expect_identifier("receiver component"));
    }
    if (s.try_consume('(')) {
      if (!s.try_consume(')')) {
        for (;;) {
          Parameter p;
          p.name = s.expect_identifier("parameter name");
          s.expect(':');
          p.type = parse_type_at(s);
          if (s.try_keyword("unit")) p.unit = parse_term(s);
          ev.parameters.push_back(std::move(p));
          if (s.try_consume(')')) break;
          s.expect(',');
        }
      }
    }
    c.events.push_back(std::move(ev));
  }
}

void parse_actions(Scanner& s, BasicComponent& c) {
  s.expect('{');
  while (!s.try_consume('}')) {
    ActionDef a;
    a.id = s.expect_identifier("action id");
    a.name = s.expect_identifier("action name");
    s.expect_keyword("uses");
    a.event_id = s.expect_identifier("event id");
    c.actions.push_back(std::move(a));
  }
}

void parse_states(Scanner& s, BasicComponent& c) {
  s.expect('{');
  while (!s.try_consume('}')) {
    StateDef st;
    st.name = s.expect_identifier("state name");
    for (;;) {
      if (s.try_keyword("initial")) {
        st.is_initial = true;
      } else if (s.try_keyword("final")) {
        st.is_final = true;
      } else if (s.try_keyword("goal")) {
        st.is_goal = true;
      } else {
        break;
      }
    }
    if (s.try_consume('{')) {
      while (!s.try_consume('}')) {
        s.expect_keyword("on");
        ExitRule exit;
        exit.action_id = s.expect_identifier("action id");
        s.expect('-');
        s.expect('>');
        exit.next_state = s.expect_identifier("next state");
        st.exits.push_back(std::move(exit));
      }
    }
    c.states.push_back(std::move(st));
  }
}

void parse_tag_lists(Scanner& s, SemanticTags& tags) {
  s.expect('{');
  while (!s.try_consume('}')) {
    if (s.try_keyword("aoi")) {
      s.expect(':');
      for (auto& t : parse_term_list(s)) tags.area_of_interest.insert(t);
    } else if (s.try_keyword("purpose")) {
      s.expect(':');
      for (auto& t : parse_term_list(s)) tags.purpose.insert(t);
    } else {
      fail(ErrorKind::Syntax, "expected 'aoi' or 'purpose' at " + s.context());
    }
  }
}

void parse_semantics(Scanner& s, BasicComponent& c) {
  s.expect('{');
  SemanticTags all;
  std::map<Identifier, SemanticTags> overrides;
  while (!s.try_consume('}')) {
    if (s.try_keyword("all")) {
      parse_tag_lists(s, all);
    } else if (s.try_keyword("action")) {
      Identifier id = s.expect_identifier("action id");
      parse_tag_lists(s, overrides[id]);
    } else {
      fail(ErrorKind::Syntax, "expected 'all' or 'action' at " + s.context());
    }
  }
  for (const auto& a : c.actions) {
    auto it = overrides.find(a.id);
    c.action_tags[a.id] = it != overrides.end() ? it->second : all;
  }
  for (const auto& [id, tags] : overrides) {
    if (!c.find_action(id))
      fail(ErrorKind::Reference,
           "semantics reference unknown action '" + id + "'");
  }
}

ExtendedComponent parse_extension_block(Scanner& s, const BasicComponent& base);

ParsedComponent parse_component_at(Scanner& s) {
  ParsedComponent out;
  BasicComponent& c = out.component;
  s.expect_keyword("component");
  c.name = s.expect_identifier("component name");
  s.expect('{');
  bool saw_extension = false;
  std::string extension_source;
  while (!s.try_consume('}')) {
    if (s.try_keyword("entity")) {
      parse_entity(s, c);
    } else if (s.try_keyword("events")) {
      parse_events(s, c);
    } else if (s.try_keyword("actions")) {
      parse_actions(s, c);
    } else if (s.try_keyword("states")) {
      parse_states(s, c);
    } else if (s.try_keyword("semantics")) {
      parse_semantics(s, c);
    } else if (s.try_keyword("extension")) {
      if (saw_extension)
        fail(ErrorKind::DuplicateId, "duplicate extension block");
      saw_extension = true;
      c.validate(); // extension expressions need a valid base
      out.extension = parse_extension_block(s, c);
      continue;
    } else {
      fail(ErrorKind::Syntax, "unknown section at " + s.context());
    }
  }
  c.validate();
  if (out.extension) {
    out.extension->base = c;
    out.extension->validate_containment();
  }
  return out;
}

// --- extension ---

colored::TypeEnv transition_env(const ExtendedComponent& ext,
                                const ExtTransition& t,
                                const BasicComponent& base) {
  colored::TypeEnv env;
  for (const auto& in : t.inputs) {
    const StateVariable* sv = ext.find_variable(in);
    if (!sv)
      fail(ErrorKind::Reference,
           "transition input '" + in + "' is not a state variable");
    env.emplace(sv->name, sv->type);
  }
  const EventDef* ev = base.find_event(t.event_id);
  if (!ev)
    fail(ErrorKind::BaseMismatch,
         "transition uses unknown event '" + t.event_id + "'");
  if (base.direction(*ev) != EventDirection::Send) {
    // Receive (and self-directed) transitions see the payload.
    for (const auto& p : ev->parameters) env.emplace(p.name, p.type);
  }
  return env;
}

void check_transition(const ExtendedComponent& ext, ExtTransition& t,
                      const BasicComponent& base) {
  colored::TypeEnv env = transition_env(ext, t, base);
  if (t.guard) {
    if (colored::contains_choose(t.guard))
      fail(ErrorKind::Type, "choose() is not allowed in guards");
    TypeName gt = colored::typecheck(t.guard, env);
    if (gt.tag() != TypeName::Tag::Bool)
      fail(ErrorKind::Type, "guard '" + t.guard->render() +
                                "' has type " + gt.render() + ", expected BOOL");
  }

  const EventDef* ev = base.find_event(t.event_id);
  bool is_send = base.direction(*ev) == EventDirection::Send;

  // Assignment targets: output state variables, event parameters of send
  // transitions, or fresh locals.
  std::set<std::string> assigned;
  for (auto& stmt : t.action) {
    std::optional<TypeName> target_type;
    if (const StateVariable* sv = ext.find_variable(stmt.target)) {
      if (!t.outputs.count(sv->name))
        fail(ErrorKind::Type, "assignment to '" + stmt.target +
                                  "' which is not an output of the transition");
      target_type = sv->type;
    } else {
      for (const auto& p : ev->parameters)
        if (p.name == stmt.target) {
          if (!is_send)
            fail(ErrorKind::Type,
                 "assignment to received parameter '" + stmt.target + "'");
          target_type = p.type;
        }
    }
    TypeName vt = colored::typecheck(stmt.value, env, target_type);
    if (target_type && vt != *target_type)
      fail(ErrorKind::Type, "assignment to '" + stmt.target + "' of type " +
                                target_type->render() + " from " + vt.render());
    env.insert_or_assign(stmt.target, vt);
    assigned.insert(stmt.target);
  }

  // Every output-only state variable must be written (there is no previous
  // value to retain) and send payloads must be fully constructed.
  for (const auto& out : t.outputs) {
    if (!t.inputs.count(out) && !assigned.count(out))
      fail(ErrorKind::Type,
           "output variable '" + out + "' is never assigned by the action");
  }
  if (is_send) {
    for (const auto& p : ev->parameters)
      if (!assigned.count(p.name))
        fail(ErrorKind::Type, "send transition does not produce parameter '" +
                                  p.name + "' of event " + ev->name);
  }
}

ExtendedComponent parse_extension_block(Scanner& s,
                                        const BasicComponent& base) {
  ExtendedComponent ext;
  ext.base = base;
  s.expect('{');
  while (!s.try_consume('}')) {
    if (s.try_keyword("variables")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        StateVariable sv;
        sv.name = s.expect_identifier("variable name");
        s.expect(':');
        sv.type = parse_type_at(s);
        if (!sv.type.is_concrete())
          fail(ErrorKind::Type,
               "state variable '" + sv.name + "' needs a concrete type");
        s.expect('=');
        colored::ExprPtr init = colored::parse_expr(s);
        sv.initial = colored::eval_const(init, sv.type);
        if (sv.initial->type() != sv.type)
          fail(ErrorKind::Type, "initializer of '" + sv.name +
                                    "' has type " + sv.initial->type().render());
        if (ext.find_variable(sv.name))
          fail(ErrorKind::DuplicateId, "state variable '" + sv.name +
                                           "' declared twice");
        ext.state_variables.push_back(std::move(sv));
      }
    } else if (s.try_keyword("transitions")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        s.expect_keyword("from");
        ExtTransition t;
        t.from_state = s.expect_identifier("state");
        s.expect_keyword("on");
        t.event_id = s.expect_identifier("event id");
        if (s.try_consume('[')) {
          t.guard = colored::parse_expr(s);
          s.expect(']');
        }
        if (s.try_consume('/')) {
          for (auto& stmt : colored::parse_block(s)) t.action.push_back(stmt);
        }
        for (;;) {
          if (s.try_keyword("in")) {
            s.expect('(');
            if (!s.try_consume(')')) {
              for (;;) {
                t.inputs.insert(s.expect_identifier("input variable"));
                if (s.try_consume(')')) break;
                s.expect(',');
              }
            }
          } else if (s.try_keyword("out")) {
            s.expect('(');
            if (!s.try_consume(')')) {
              for (;;) {
                t.outputs.insert(s.expect_identifier("output variable"));
                if (s.try_consume(')')) break;
                s.expect(',');
              }
            }
          } else {
            break;
          }
        }
        s.expect('-');
        s.expect('>');
        t.to_state = s.expect_identifier("next state");
        check_transition(ext, t, base);
        ext.transitions.push_back(std::move(t));
      }
    } else {
      fail(ErrorKind::Syntax,
           "expected 'variables' or 'transitions' at " + s.context());
    }
  }
  return ext;
}

} // namespace

ParsedComponent parse_component_document(const std::string& document,
                                         const std::string& origin) {
  Scanner s(document, origin);
  ParsedComponent out = parse_component_at(s);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing input after component at " + s.context());
  return out;
}

BasicComponent parse_component(const std::string& document,
                               const std::string& origin) {
  return parse_component_document(document, origin).component;
}

ExtendedComponent parse_extension(const std::string& document,
                                  const BasicComponent& base,
                                  const std::string& origin) {
  Scanner s(document, origin);
  s.expect_keyword("extension");
  ExtendedComponent ext = parse_extension_block(s, base);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing input after extension at " + s.context());
  ext.validate_containment();
  return ext;
}

ComposedComponent parse_composition(const std::string& document,
                                    const std::vector<ParsedComponent>& members,
                                    const std::string& origin) {
  Scanner s(document, origin);
  ComposedComponent comp;
  s.expect_keyword("composition");
  comp.name = s.expect_identifier("composition name");
  s.expect('{');

  auto parse_action_ref = [&](Scanner& sc) {
    ActionRef ref;
    ref.component = sc.expect_identifier("component name");
    sc.expect('.');
    ref.action_id = sc.expect_identifier("action id");
    return ref;
  };

  while (!s.try_consume('}')) {
    if (s.try_keyword("members")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        MemberRef m;
        m.name = s.expect_identifier("member name");
        if (s.try_keyword("from")) m.source = s.expect_string();
        if (s.try_keyword("instances"))
          m.instances = static_cast<int>(s.expect_integer());
        bool found = false;
        for (const auto& cand : members) {
          if (cand.component.name == m.name) {
            m.component = cand.component;
            m.extension = cand.extension;
            found = true;
            break;
          }
        }
        if (!found)
          fail(ErrorKind::UnknownMember,
               "member '" + m.name + "' was not provided");
        comp.members.push_back(std::move(m));
      }
    } else if (s.try_keyword("inputs")) {
      s.expect('{');
      while (!s.try_consume('}')) comp.act_in.push_back(parse_action_ref(s));
    } else if (s.try_keyword("outputs")) {
      s.expect('{');
      while (!s.try_consume('}')) comp.act_out.push_back(parse_action_ref(s));
    } else if (s.try_keyword("poi")) {
      s.expect('{');
      while (!s.try_consume('}')) {
        s.expect_keyword("POI");
        PoiEntry entry;
        entry.id = s.expect_identifier("POI id");
        s.expect(':');
        s.expect('!');
        entry.send = parse_action_ref(s);
        s.expect('-');
        s.expect('>');
        for (;;) {
          s.expect('?');
          entry.receives.push_back(parse_action_ref(s));
          if (!s.try_consume(',')) break;
        }
        comp.poi.push_back(std::move(entry));
      }
    } else if (s.try_keyword("semantics")) {
      parse_tag_lists(s, comp.poi_tags);
    } else {
      fail(ErrorKind::Syntax, "unknown composition section at " + s.context());
    }
  }
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing input after composition");
  comp.validate();
  return comp;
}

namespace {

QueryRef parse_query(const std::string& text, const std::string& origin) {
  Scanner s(text, origin);
  QueryRef q;
  if (s.try_keyword("exists")) {
    q.kind = QueryRef::Kind::Exists;
    q.predicate = s.expect_string();
  } else if (s.try_keyword("never")) {
    q.kind = QueryRef::Kind::Never;
    q.predicate = s.expect_string();
  } else {
    q.kind = QueryRef::Kind::Builtin;
    q.name = s.expect_identifier("query name");
  }
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing input after check clause");
  return q;
}

// Splits "<description> check <query>" on the last standalone 'check'.
std::pair<std::string, QueryRef> split_check(const std::string& line,
                                             const std::string& origin) {
  const std::string kw = " check ";
  size_t at = line.rfind(kw);
  if (at == std::string::npos) return {text::trim(line), QueryRef{}};
  std::string description = text::trim(line.substr(0, at));
  QueryRef q = parse_query(text::trim(line.substr(at + kw.size())), origin);
  return {description, q};
}

ConstraintKind kind_for_id(const std::string& id) {
  if (id == "s1") return ConstraintKind::S1Syntactic;
  if (id == "s2") return ConstraintKind::S2StaticSemantic;
  if (id == "s3a") return ConstraintKind::S3aStateMachine;
  if (id == "s3b") return ConstraintKind::S3bTransformation;
  return ConstraintKind::Custom;
}

const char* default_description(ConstraintKind kind) {
  switch (kind) {
    case ConstraintKind::S1Syntactic:
      return "components are composable at the syntactic level";
    case ConstraintKind::S2StaticSemantic:
      return "components are composable at the static-semantic level";
    case ConstraintKind::S3aStateMachine:
      return "state machines match and reach final or goal states";
    case ConstraintKind::S3bTransformation:
      return "the executable model represents the conceptual model";
    case ConstraintKind::Custom:
      break;
  }
  return "";
}

} // namespace

RequirementSpec parse_requirements(const std::string& document,
                                   const std::string& origin) {
  RequirementSpec spec;
  Scanner s(document, origin);
  for (;;) {
    s.skip_ws();
    if (s.at_end()) break;
    if (s.try_keyword("objective")) {
      Objective o;
      o.id = s.expect_identifier("objective id");
      s.expect(':');
      auto [desc, query] = split_check(s.rest_of_line(), origin);
      o.description = desc;
      o.check = query;
      spec.objectives.push_back(std::move(o));
    } else if (s.try_keyword("constraint")) {
      Constraint c;
      c.id = s.expect_identifier("constraint id");
      s.expect(':');
      auto [desc, query] = split_check(s.rest_of_line(), origin);
      c.kind = kind_for_id(c.id);
      c.description = desc;
      c.check = query;
      spec.constraints.push_back(std::move(c));
    } else {
      fail(ErrorKind::Syntax,
           "expected 'objective' or 'constraint' at " + s.context());
    }
  }

  // The mandatory tiers are always present.
  const std::pair<ConstraintKind, const char*> mandatory[] = {
      {ConstraintKind::S1Syntactic, "s1"},
      {ConstraintKind::S2StaticSemantic, "s2"},
      {ConstraintKind::S3aStateMachine, "s3a"},
      {ConstraintKind::S3bTransformation, "s3b"},
  };
  std::vector<Constraint> ordered;
  for (auto [kind, id] : mandatory) {
    if (const Constraint* existing = spec.find_constraint(kind)) {
      ordered.push_back(*existing);
    } else {
      Constraint c;
      c.id = id;
      c.kind = kind;
      c.description = default_description(kind);
      ordered.push_back(std::move(c));
    }
  }
  for (auto& c : spec.constraints)
    if (c.kind == ConstraintKind::Custom) ordered.push_back(std::move(c));
  spec.constraints = std::move(ordered);
  return spec;
}

ParsedComponent load_component_file(const std::string& path) {
  return parse_component_document(text::read_file(path), path);
}

ComposedComponent load_composition_file(const std::string& path) {
  namespace fs = std::filesystem;
  std::string document = text::read_file(path);

  // First pass over the members block to collect the source paths.
  std::vector<std::pair<std::string, std::string>> sources; // (name, path)
  {
    Scanner s(document, path);
    s.expect_keyword("composition");
    s.expect_identifier("composition name");
    s.expect('{');
    int depth = 1;
    while (!s.at_end() && depth > 0) {
      if (s.try_keyword("members")) {
        s.expect('{');
        while (!s.try_consume('}')) {
          std::string name = s.expect_identifier("member name");
          std::string src;
          if (s.try_keyword("from")) src = s.expect_string();
          if (s.try_keyword("instances")) s.expect_integer();
          if (src.empty())
            fail(ErrorKind::UnknownMember,
                 "member '" + name + "' has no source file in " + path);
          sources.emplace_back(name, src);
        }
        continue;
      }
      char c = s.get();
      if (c == '{') ++depth;
      if (c == '}') --depth;
      if (c == '"') {
        while (!s.at_end() && s.peek() != '"') s.get();
        if (!s.at_end()) s.get();
      }
    }
  }

  fs::path base = fs::path(path).parent_path();
  std::vector<ParsedComponent> members;
  for (const auto& [name, src] : sources) {
    fs::path member_path = fs::path(src).is_absolute() ? fs::path(src)
                                                       : base / src;
    ParsedComponent parsed = load_component_file(member_path.string());
    if (parsed.component.name != name)
      fail(ErrorKind::UnknownMember, "file " + member_path.string() +
                                         " defines '" + parsed.component.name +
                                         "', expected '" + name + "'");
    members.push_back(std::move(parsed));
  }
  return parse_composition(document, members, path);
}

RequirementSpec load_requirements_file(const std::string& path) {
  return parse_requirements(text::read_file(path), path);
}

} // namespace cmv::model
