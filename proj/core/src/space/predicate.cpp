#include "cmv/space/predicate.hpp"

#include <limits>

#include "cmv/colored/expr.hpp"
#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv::space {

namespace {

using text::Scanner;

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

bool cmp_int(std::int64_t a, CmpOp op, std::int64_t b) {
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return a != b;
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a <= b;
    case CmpOp::Gt: return a > b;
    case CmpOp::Ge: return a >= b;
  }
  return false;
}

bool cmp_value(const Value& a, CmpOp op, const Value& b) {
  switch (op) {
    case CmpOp::Eq: return a == b;
    case CmpOp::Ne: return !(a == b);
    case CmpOp::Lt: return a < b;
    case CmpOp::Le: return a < b || a == b;
    case CmpOp::Gt: return b < a;
    case CmpOp::Ge: return b < a || a == b;
  }
  return false;
}

CmpOp parse_op(Scanner& s) {
  s.skip_ws();
  char c = s.peek();
  if (c == '=') {
    s.get();
    if (s.peek() == '=') s.get();
    return CmpOp::Eq;
  }
  if (c == '!') {
    s.get();
    s.expect('=');
    return CmpOp::Ne;
  }
  if (c == '<') {
    s.get();
    if (s.peek() == '>') {
      s.get();
      return CmpOp::Ne;
    }
    if (s.peek() == '=') {
      s.get();
      return CmpOp::Le;
    }
    return CmpOp::Lt;
  }
  if (c == '>') {
    s.get();
    if (s.peek() == '=') {
      s.get();
      return CmpOp::Ge;
    }
    return CmpOp::Gt;
  }
  fail(ErrorKind::Syntax, "expected a comparison operator at " + s.context());
}

std::string parse_place(Scanner& s) {
  if (s.peek_string()) return s.expect_string();
  std::string name = s.expect_identifier("place name");
  // allow dotted place names (Component.item)
  while (s.peek() == '.') {
    s.get();
    name += "." + s.expect_identifier("place name part");
  }
  return name;
}

int require_place(const StateGraph& g, const std::string& name) {
  int p = g.place_index(name);
  if (p < 0)
    fail(ErrorKind::UnknownPredicate, "no place named '" + name + "'");
  return p;
}

Value parse_value(Scanner& s) {
  colored::ExprPtr e = colored::parse_expr(s);
  return colored::eval_const(e, std::nullopt);
}

// Token count at a place in a node: multiset size, except the flat-net
// encoding where one INT value carries the count (omega = -1 counts as
// unbounded, represented as a very large count).
std::int64_t count_at(const StateGraph& g, int node, int place) {
  const auto* tokens = g.tokens_at(node, place);
  if (!tokens || tokens->empty()) return 0;
  if (g.top_level_places.empty() && tokens->size() == 1 &&
      tokens->front().type().tag() == TypeName::Tag::Int) {
    std::int64_t v = tokens->front().as_int();
    return v < 0 ? std::numeric_limits<std::int64_t>::max() : v;
  }
  return static_cast<std::int64_t>(tokens->size());
}

Predicate::Fn parse_pred(Scanner& s);

Predicate::Fn parse_atom(Scanner& s) {
  s.skip_ws();
  if (s.try_consume('(')) {
    Predicate::Fn inner = parse_pred(s);
    s.expect(')');
    return inner;
  }
  if (s.try_keyword("not")) {
    Predicate::Fn inner = parse_atom(s);
    return [inner](const StateGraph& g, int n) { return !inner(g, n); };
  }
  if (s.try_keyword("empty")) {
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(')');
    return [place](const StateGraph& g, int n) {
      return count_at(g, n, require_place(g, place)) == 0;
    };
  }
  if (s.try_keyword("nonempty")) {
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(')');
    return [place](const StateGraph& g, int n) {
      return count_at(g, n, require_place(g, place)) != 0;
    };
  }
  if (s.try_keyword("between")) {
    s.expect('(');
    s.expect_keyword("count");
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(')');
    s.expect(',');
    std::int64_t lo = s.expect_integer();
    s.expect(',');
    std::int64_t hi = s.expect_integer();
    s.expect(')');
    return [place, lo, hi](const StateGraph& g, int n) {
      std::int64_t c = count_at(g, n, require_place(g, place));
      return c >= lo && c <= hi;
    };
  }
  if (s.try_keyword("count")) {
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(')');
    CmpOp op = parse_op(s);
    std::int64_t bound = s.expect_integer();
    return [place, op, bound](const StateGraph& g, int n) {
      return cmp_int(count_at(g, n, require_place(g, place)), op, bound);
    };
  }
  if (s.try_keyword("token")) {
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(')');
    CmpOp op = parse_op(s);
    if (op != CmpOp::Eq && op != CmpOp::Ne)
      fail(ErrorKind::Syntax, "token() supports = and != only");
    Value v = parse_value(s);
    return [place, op, v](const StateGraph& g, int n) {
      const auto* tokens = g.tokens_at(n, require_place(g, place));
      bool found = false;
      if (tokens)
        for (const auto& t : *tokens)
          if (t == v) found = true;
      return op == CmpOp::Eq ? found : !found;
    };
  }
  if (s.try_keyword("field")) {
    s.expect('(');
    std::string place = parse_place(s);
    s.expect(',');
    std::int64_t index = s.expect_integer();
    s.expect(')');
    CmpOp op = parse_op(s);
    Value v = parse_value(s);
    if (index < 1)
      fail(ErrorKind::Syntax, "field indices are 1-based");
    return [place, index, op, v](const StateGraph& g, int n) {
      const auto* tokens = g.tokens_at(n, require_place(g, place));
      if (!tokens) return false;
      for (const auto& t : *tokens) {
        if (t.type().tag() != TypeName::Tag::Tuple) continue;
        if (static_cast<size_t>(index) > t.elements().size()) continue;
        if (cmp_value(t.elements()[index - 1], op, v)) return true;
      }
      return false;
    };
  }
  fail(ErrorKind::Syntax, "expected a predicate atom at " + s.context());
}

Predicate::Fn parse_and(Scanner& s) {
  Predicate::Fn lhs = parse_atom(s);
  while (s.try_keyword("and")) {
    Predicate::Fn rhs = parse_atom(s);
    Predicate::Fn prev = lhs;
    lhs = [prev, rhs](const StateGraph& g, int n) {
      return prev(g, n) && rhs(g, n);
    };
  }
  return lhs;
}

Predicate::Fn parse_pred(Scanner& s) {
  Predicate::Fn lhs = parse_and(s);
  while (s.try_keyword("or")) {
    Predicate::Fn rhs = parse_and(s);
    Predicate::Fn prev = lhs;
    lhs = [prev, rhs](const StateGraph& g, int n) {
      return prev(g, n) || rhs(g, n);
    };
  }
  return lhs;
}

} // namespace

Predicate Predicate::parse(const std::string& source) {
  Scanner s(source, "<predicate>");
  Fn fn = parse_pred(s);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing input after predicate: " + source);
  return Predicate(std::move(fn));
}

Predicate Predicate::top_level_active() {
  return Predicate([](const StateGraph& g, int n) {
    if (g.top_level_places.empty()) return true;
    for (int p : g.top_level_places) {
      const auto* tokens = g.tokens_at(n, p);
      if (tokens && !tokens->empty()) return true;
    }
    return false;
  });
}

} // namespace cmv::space
