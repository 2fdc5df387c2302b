#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cmv/text.hpp"
#include "cmv/types.hpp"

namespace cmv::colored {

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

// Guard/action expression AST. Statically typed, pure; the only effects
// are the nondeterministic `choose` picks, which the evaluator either
// enumerates (exploration) or resolves through a seeded policy
// (simulation).
class Expr {
public:
  enum class Kind {
    IntLit,
    BoolLit,
    TextLit,
    TupleLit,
    SeqLit,
    Var,
    Unary,   // - not
    Binary,  // + - * div mod = != < <= > >= and or
    If,
    Call,    // builtins
    Project, // tuple field access, 1-based
  };

  enum class Op {
    Neg, Not,
    Add, Sub, Mul, Div, Mod,
    Eq, Ne, Lt, Le, Gt, Ge,
    And, Or,
  };

  Kind kind;
  Op op = Op::Add;
  std::int64_t int_value = 0;
  bool bool_value = false;
  std::string text_value; // TextLit text, Var name, Call builtin name
  std::vector<ExprPtr> children;
  int index = 0; // Project field (1-based)

  // Filled by the type checker; required for empty sequence literals.
  mutable std::optional<TypeName> checked_type;

  std::string render() const;
};

// One assignment inside an action block.
struct Stmt {
  std::string target;
  ExprPtr value;
};

std::string render_block(const std::vector<Stmt>& stmts);

// Parsers. The scanner-based entry points compose with the DSL parser;
// the string entry points parse a full document.
ExprPtr parse_expr(text::Scanner& s);
ExprPtr parse_expr(const std::string& source);
std::vector<Stmt> parse_block(text::Scanner& s); // '{ name = expr; ... }'
std::vector<Stmt> parse_block(const std::string& source);

// Type checking environment: variable name -> type.
using TypeEnv = std::map<std::string, TypeName>;

// Returns the expression type; records it on the node. `expected` guides
// contextual typing (empty sequence literals). Throws Error(Type) /
// Error(UnboundVariable).
TypeName typecheck(const ExprPtr& e, const TypeEnv& env,
                   const std::optional<TypeName>& expected = std::nullopt);

bool contains_choose(const ExprPtr& e);

// Runtime environment.
struct Env {
  std::map<std::string, Value> vars;
  std::int64_t instance_id = 1;
};

// Resolves `choose` picks. pick(n) returns an index in [0,n); n == 0
// aborts the current branch (no outcome).
class ChoiceResolver {
public:
  virtual ~ChoiceResolver() = default;
  virtual size_t pick(size_t n) = 0;
};

// Deterministic single evaluation under a resolver.
Value eval(const ExprPtr& e, const Env& env, ChoiceResolver& choices);

// Enumerates every choose-branch outcome (deduplicated, deterministic
// order). An empty result means every branch aborted on an empty choose.
std::vector<Value> eval_all(const ExprPtr& e, const Env& env);

// Runs an action block, returning the updated environment (single path)
// or every reachable environment (exploration).
Env eval_block(const std::vector<Stmt>& stmts, Env env, ChoiceResolver& choices);
std::vector<Env> eval_block_all(const std::vector<Stmt>& stmts, const Env& env);

// Like eval_block, but an empty choose aborts the run and yields nullopt
// instead of propagating.
std::optional<Env> try_eval_block(const std::vector<Stmt>& stmts, Env env,
                                  ChoiceResolver& choices);

// Constant evaluation for literal initializers (no variables, no choose).
Value eval_const(const ExprPtr& e, const std::optional<TypeName>& expected);

} // namespace cmv::colored
