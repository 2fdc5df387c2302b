#pragma once

#include <functional>
#include <memory>
#include <string>

#include "cmv/space/graph.hpp"

namespace cmv::space {

// Query over one node's marking, built from combinators: place emptiness,
// token equality, count bounds, per-field comparisons, and boolean
// connectives.
//
// Grammar:
//   pred  := or-chain of and-chains of (not)* atom
//   atom  := empty(P) | nonempty(P) | '(' pred ')'
//          | count(P) op INT | between(count(P), lo, hi)
//          | token(P) (=|!=) value            -- some token equals value
//          | field(P, k) op value             -- some token's k-th field
//   op    := = | != | < | <= | > | >=
// Place names may be quoted; values use the expression literal syntax.
class Predicate {
public:
  using Fn = std::function<bool(const StateGraph&, int node)>;

  explicit Predicate(Fn fn) : fn_(std::move(fn)) {}

  bool operator()(const StateGraph& g, int node) const { return fn_(g, node); }

  static Predicate parse(const std::string& source);

  // Nodes where some top-level place is non-empty (the compositional
  // retention default); falls back to always-true on graphs without a
  // top-level distinction.
  static Predicate top_level_active();

private:
  Fn fn_;
};

} // namespace cmv::space
