#include <algorithm>

#include "cmv/colored/expr.hpp"
#include "cmv/diag.hpp"

namespace cmv::colored {

namespace {

// Thrown when a branch dies on choose over an empty sequence.
struct BranchAbort {};

Value eval_node(const ExprPtr& e, const Env& env, ChoiceResolver& choices);

Value eval_call(const ExprPtr& e, const Env& env, ChoiceResolver& choices) {
  const std::string& fn = e->text_value;
  auto arg = [&](size_t i) { return eval_node(e->children[i], env, choices); };

  if (fn == "abs") {
    std::int64_t v = arg(0).as_int();
    return Value::integer(v < 0 ? -v : v);
  }
  if (fn == "len") {
    Value v = arg(0);
    if (v.type().tag() == TypeName::Tag::Text)
      return Value::integer(static_cast<std::int64_t>(v.as_text().size()));
    return Value::integer(static_cast<std::int64_t>(v.elements().size()));
  }
  if (fn == "substring") {
    std::string s = arg(0).as_text();
    std::int64_t start = arg(1).as_int(), count = arg(2).as_int();
    if (start < 0 || count < 0 ||
        static_cast<size_t>(start + count) > s.size())
      fail(ErrorKind::IndexOutOfRange,
           "substring(" + s + "," + std::to_string(start) + "," +
               std::to_string(count) + ")");
    return Value::text(s.substr(static_cast<size_t>(start),
                                static_cast<size_t>(count)));
  }
  if (fn == "text") return Value::text(std::to_string(arg(0).as_int()));
  if (fn == "int") {
    const std::string s = arg(0).as_text();
    try {
      size_t used = 0;
      std::int64_t v = std::stoll(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return Value::integer(v);
    } catch (const std::exception&) {
      fail(ErrorKind::Type, "int() on non-numeric text \"" + s + "\"");
    }
  }
  if (fn == "append") {
    Value seq = arg(0);
    Value elem = arg(1);
    std::vector<Value> elems = seq.elements();
    elems.push_back(elem);
    return Value::seq(seq.type().element(), std::move(elems));
  }
  if (fn == "nth") {
    Value seq = arg(0);
    std::int64_t i = arg(1).as_int();
    if (i < 0 || static_cast<size_t>(i) >= seq.elements().size())
      fail(ErrorKind::IndexOutOfRange,
           "nth(" + seq.render() + "," + std::to_string(i) + ")");
    return seq.elements()[static_cast<size_t>(i)];
  }
  if (fn == "remove") {
    Value seq = arg(0);
    Value elem = arg(1);
    std::vector<Value> elems = seq.elements();
    auto it = std::find(elems.begin(), elems.end(), elem);
    if (it != elems.end()) elems.erase(it);
    return Value::seq(seq.type().element(), std::move(elems));
  }
  if (fn == "choose") {
    Value seq = arg(0);
    size_t n = seq.elements().size();
    if (n == 0) throw BranchAbort{};
    return seq.elements()[choices.pick(n)];
  }
  if (fn == "instance") return Value::integer(env.instance_id);
  fail(ErrorKind::ExprSyntax, "unknown function '" + fn + "'");
}

Value eval_node(const ExprPtr& e, const Env& env, ChoiceResolver& choices) {
  switch (e->kind) {
    case Expr::Kind::IntLit: return Value::integer(e->int_value);
    case Expr::Kind::BoolLit: return Value::boolean(e->bool_value);
    case Expr::Kind::TextLit: return Value::text(e->text_value);
    case Expr::Kind::TupleLit: {
      std::vector<Value> elems;
      elems.reserve(e->children.size());
      for (const auto& c : e->children)
        elems.push_back(eval_node(c, env, choices));
      return Value::tuple(std::move(elems));
    }
    case Expr::Kind::SeqLit: {
      std::vector<Value> elems;
      elems.reserve(e->children.size());
      for (const auto& c : e->children)
        elems.push_back(eval_node(c, env, choices));
      TypeName elem_type = TypeName::integer();
      if (!elems.empty())
        elem_type = elems.front().type();
      else if (e->checked_type &&
               e->checked_type->tag() == TypeName::Tag::Seq)
        elem_type = e->checked_type->element();
      else
        fail(ErrorKind::Type, "untyped empty sequence literal");
      return Value::seq(elem_type, std::move(elems));
    }
    case Expr::Kind::Var: {
      auto it = env.vars.find(e->text_value);
      if (it == env.vars.end())
        fail(ErrorKind::UnboundVariable,
             "variable '" + e->text_value + "' has no value");
      return it->second;
    }
    case Expr::Kind::Unary: {
      if (e->op == Expr::Op::Neg)
        return Value::integer(-eval_node(e->children[0], env, choices).as_int());
      return Value::boolean(!eval_node(e->children[0], env, choices).as_bool());
    }
    case Expr::Kind::Binary: {
      switch (e->op) {
        case Expr::Op::And: {
          if (!eval_node(e->children[0], env, choices).as_bool())
            return Value::boolean(false);
          return Value::boolean(
              eval_node(e->children[1], env, choices).as_bool());
        }
        case Expr::Op::Or: {
          if (eval_node(e->children[0], env, choices).as_bool())
            return Value::boolean(true);
          return Value::boolean(
              eval_node(e->children[1], env, choices).as_bool());
        }
        default: break;
      }
      Value l = eval_node(e->children[0], env, choices);
      Value r = eval_node(e->children[1], env, choices);
      switch (e->op) {
        case Expr::Op::Add:
          if (l.type().tag() == TypeName::Tag::Text)
            return Value::text(l.as_text() + r.as_text());
          return Value::integer(l.as_int() + r.as_int());
        case Expr::Op::Sub: return Value::integer(l.as_int() - r.as_int());
        case Expr::Op::Mul: return Value::integer(l.as_int() * r.as_int());
        case Expr::Op::Div: {
          if (r.as_int() == 0) fail(ErrorKind::DivByZero, e->render());
          return Value::integer(l.as_int() / r.as_int());
        }
        case Expr::Op::Mod: {
          if (r.as_int() == 0) fail(ErrorKind::DivByZero, e->render());
          return Value::integer(l.as_int() % r.as_int());
        }
        case Expr::Op::Eq: return Value::boolean(l == r);
        case Expr::Op::Ne: return Value::boolean(!(l == r));
        case Expr::Op::Lt: return Value::boolean(l.as_int() < r.as_int());
        case Expr::Op::Le: return Value::boolean(l.as_int() <= r.as_int());
        case Expr::Op::Gt: return Value::boolean(l.as_int() > r.as_int());
        case Expr::Op::Ge: return Value::boolean(l.as_int() >= r.as_int());
        default:
          fail(ErrorKind::ExprSyntax, "invalid operator");
      }
    }
    case Expr::Kind::If: {
      if (eval_node(e->children[0], env, choices).as_bool())
        return eval_node(e->children[1], env, choices);
      return eval_node(e->children[2], env, choices);
    }
    case Expr::Kind::Call: return eval_call(e, env, choices);
    case Expr::Kind::Project: {
      Value v = eval_node(e->children[0], env, choices);
      if (v.type().tag() != TypeName::Tag::Tuple ||
          static_cast<size_t>(e->index) > v.elements().size())
        fail(ErrorKind::IndexOutOfRange,
             "projection ." + std::to_string(e->index) + " on " + v.render());
      return v.elements()[e->index - 1];
    }
  }
  fail(ErrorKind::ExprSyntax, "unreachable expression kind");
}

// Replays a recorded pick script, extending it with zeros past the end.
// Drives the odometer-style enumeration of all choose branches.
class ScriptedResolver : public ChoiceResolver {
public:
  explicit ScriptedResolver(const std::vector<size_t>& script)
      : script_(script) {}

  size_t pick(size_t n) override {
    arities_.push_back(n);
    size_t v = pos_ < script_.size() ? script_[pos_] : 0;
    ++pos_;
    return v; // n == 0 never reaches here (BranchAbort thrown before)
  }

  const std::vector<size_t>& arities() const { return arities_; }

private:
  std::vector<size_t> script_;
  size_t pos_ = 0;
  std::vector<size_t> arities_;
};

// Enumerate all branches of fn. fn runs under a resolver; outcomes are
// collected per complete script. Deterministic order by script
// lexicographic order.
template <typename Fn, typename Out>
void enumerate_branches(Fn&& fn, std::vector<Out>& outcomes) {
  std::vector<size_t> script;
  for (;;) {
    ScriptedResolver resolver(script);
    bool aborted = false;
    std::optional<Out> result;
    try {
      result = fn(resolver);
    } catch (const BranchAbort&) {
      aborted = true;
    }
    if (!aborted && result) outcomes.push_back(std::move(*result));
    // advance the odometer over the recorded arities
    const auto& arities = resolver.arities();
    script.resize(arities.size());
    size_t i = arities.size();
    for (;;) {
      if (i == 0) return;
      --i;
      if (script[i] + 1 < arities[i]) {
        script[i] += 1;
        script.resize(i + 1);
        break;
      }
    }
  }
}

} // namespace

Value eval(const ExprPtr& e, const Env& env, ChoiceResolver& choices) {
  return eval_node(e, env, choices);
}

std::vector<Value> eval_all(const ExprPtr& e, const Env& env) {
  std::vector<Value> out;
  enumerate_branches(
      [&](ChoiceResolver& r) { return eval_node(e, env, r); }, out);
  // Deduplicate while keeping first-seen order.
  std::vector<Value> unique;
  for (auto& v : out) {
    if (std::find(unique.begin(), unique.end(), v) == unique.end())
      unique.push_back(std::move(v));
  }
  return unique;
}

Env eval_block(const std::vector<Stmt>& stmts, Env env,
               ChoiceResolver& choices) {
  for (const auto& stmt : stmts) {
    Value v = eval_node(stmt.value, env, choices);
    env.vars.insert_or_assign(stmt.target, std::move(v));
  }
  return env;
}

std::vector<Env> eval_block_all(const std::vector<Stmt>& stmts,
                                const Env& env) {
  std::vector<Env> out;
  enumerate_branches(
      [&](ChoiceResolver& r) { return eval_block(stmts, env, r); }, out);
  return out;
}

std::optional<Env> try_eval_block(const std::vector<Stmt>& stmts, Env env,
                                  ChoiceResolver& choices) {
  try {
    return eval_block(stmts, std::move(env), choices);
  } catch (const BranchAbort&) {
    return std::nullopt;
  }
}

Value eval_const(const ExprPtr& e, const std::optional<TypeName>& expected) {
  typecheck(e, {}, expected);
  if (contains_choose(e))
    fail(ErrorKind::ExprSyntax, "choose() is not allowed in initializers");
  struct NoChoices : ChoiceResolver {
    size_t pick(size_t) override {
      fail(ErrorKind::ExprSyntax, "nondeterminism in constant context");
    }
  } resolver;
  Env env;
  return eval_node(e, env, resolver);
}

} // namespace cmv::colored
