#include "cmv/colored/engine.hpp"

#include <algorithm>

#include "cmv/diag.hpp"

namespace cmv::colored {

namespace {

std::vector<Value> distinct(const std::vector<Value>& tokens) {
  std::vector<Value> out;
  for (const auto& t : tokens)
    if (out.empty() || !(out.back() == t)) out.push_back(t);
  return out;
}

// Binds a received payload to the event parameter names.
void bind_params(const std::vector<std::string>& params, const Value& payload,
                 Env& env) {
  if (params.empty()) return;
  if (params.size() == 1) {
    env.vars.insert_or_assign(params[0], payload);
    return;
  }
  for (size_t i = 0; i < params.size(); ++i)
    env.vars.insert_or_assign(params[i], payload.elements()[i]);
}

Value build_payload(const std::vector<std::string>& params, const Env& env) {
  if (params.empty()) return Value::unit();
  if (params.size() == 1) return env.vars.at(params[0]);
  std::vector<Value> elems;
  elems.reserve(params.size());
  for (const auto& p : params) elems.push_back(env.vars.at(p));
  return Value::tuple(elems);
}

struct SeededPolicy;

// Shared enumeration: for every (transition, state token, port token)
// selection, evaluate the guard and expand the action either over all
// choose branches or one sampled branch.
template <typename ActionExpander>
void collect_bindings(const ColoredSystem& sys, const SystemMarking& m,
                      ActionExpander&& expand, std::vector<Binding>& out) {
  for (size_t ti = 0; ti < sys.transitions.size(); ++ti) {
    const auto& t = sys.transitions[ti];
    if (t.is_relay) {
      for (const Value& tok : distinct(m.at(t.relay_in))) {
        Binding b;
        b.transition = static_cast<int>(ti);
        b.consumed.push_back({t.relay_in, tok});
        for (auto [place, count] : t.relay_outs)
          for (int k = 0; k < count; ++k) b.produced.push_back({place, tok});
        b.descriptor = t.name + " " + tok.render();
        out.push_back(std::move(b));
      }
      continue;
    }

    bool receives = t.port_in >= 0;
    for (const Value& state_tok : distinct(m.at(t.state_in))) {
      std::int64_t inst = state_tok.as_int();

      // Gather state-variable tokens for this instance.
      std::vector<std::pair<const ColoredSystem::SvRef*, Value>> sv_tokens;
      bool sv_missing = false;
      for (const auto& ref : t.svs) {
        const Value* found = nullptr;
        for (const auto& tok : m.at(ref.place)) {
          if (tok.elements().size() == 2 &&
              tok.elements()[0].as_int() == inst) {
            found = &tok;
            break;
          }
        }
        if (!found) {
          sv_missing = true;
          break;
        }
        sv_tokens.push_back({&ref, *found});
      }
      if (sv_missing) continue;

      std::vector<Value> port_tokens =
          receives ? distinct(m.at(t.port_in)) : std::vector<Value>{Value::unit()};
      for (const Value& port_tok : port_tokens) {
        Env env;
        env.instance_id = inst;
        for (const auto& [ref, tok] : sv_tokens) {
          if (ref->kind != ColoredComponent::ArcKind::Out)
            env.vars.insert_or_assign(ref->var, tok.elements()[1]);
        }
        if (receives) bind_params(t.params, port_tok, env);

        if (t.guard) {
          struct NoChoices final : ChoiceResolver {
            size_t pick(size_t) override {
              fail(ErrorKind::ExprSyntax, "choose() inside a guard");
            }
          } no_choices;
          if (!eval(t.guard, env, no_choices).as_bool()) continue;
        }

        expand(env, [&](const Env& result, const std::string& branch_tag) {
          Binding b;
          b.transition = static_cast<int>(ti);
          b.instance = inst;
          b.consumed.push_back({t.state_in, state_tok});
          if (receives) b.consumed.push_back({t.port_in, port_tok});
          for (const auto& [ref, tok] : sv_tokens)
            b.consumed.push_back({ref->place, tok});

          b.produced.push_back({t.state_out, Value::integer(inst)});
          for (const auto& [ref, tok] : sv_tokens) {
            Value next = ref->kind == ColoredComponent::ArcKind::In
                             ? tok.elements()[1]
                             : result.vars.at(ref->var);
            b.produced.push_back(
                {ref->place,
                 Value::tuple({Value::integer(inst), next})});
          }
          if (t.port_out >= 0)
            b.produced.push_back({t.port_out, build_payload(t.params, result)});

          b.descriptor = t.name + "@" + std::to_string(inst);
          if (receives && !t.params.empty())
            b.descriptor += " " + port_tok.render();
          if (!branch_tag.empty()) b.descriptor += " " + branch_tag;
          out.push_back(std::move(b));
        }, t);
      }
    }
  }
}

} // namespace

std::string Binding::event(const ColoredSystem& sys) const {
  const auto& t = sys.transitions[transition];
  return t.is_relay ? t.name : t.event;
}

std::vector<Binding> enabled_bindings(const ColoredSystem& sys,
                                      const SystemMarking& m) {
  std::vector<Binding> out;
  collect_bindings(
      sys, m,
      [&](const Env& env, auto&& emit, const ColoredSystem::Transition& t) {
        std::vector<Env> results = eval_block_all(t.action, env);
        size_t branch = 0;
        for (const Env& r : results) {
          std::string tag =
              results.size() > 1 ? "/" + std::to_string(branch) : "";
          emit(r, tag);
          ++branch;
        }
      },
      out);
  return out;
}

std::vector<Binding> enabled_bindings(const ColoredSystem& sys,
                                      const SystemMarking& m,
                                      std::mt19937_64& rng) {
  struct RandomResolver final : ChoiceResolver {
    std::mt19937_64* rng;
    size_t pick(size_t n) override { return static_cast<size_t>((*rng)() % n); }
  };
  std::vector<Binding> out;
  collect_bindings(
      sys, m,
      [&](const Env& env, auto&& emit, const ColoredSystem::Transition& t) {
        RandomResolver resolver;
        resolver.rng = &rng;
        if (auto result = try_eval_block(t.action, env, resolver))
          emit(*result, "");
      },
      out);
  return out;
}

SystemMarking fire_binding(const ColoredSystem& sys, const SystemMarking& m,
                           const Binding& b) {
  SystemMarking next = m;
  for (const auto& [place, tok] : b.consumed) {
    if (!next.remove(place, tok))
      fail(ErrorKind::StaleBinding,
           "token " + tok.render() + " is no longer at place '" +
               sys.places[place].name + "'");
  }
  for (const auto& [place, tok] : b.produced) next.add(place, tok);
  return next;
}

} // namespace cmv::colored
