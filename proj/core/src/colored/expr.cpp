#include "cmv/colored/expr.hpp"

#include <algorithm>

#include "cmv/diag.hpp"

namespace cmv::colored {

namespace {

std::shared_ptr<Expr> node(Expr::Kind kind) {
  auto e = std::make_shared<Expr>();
  e->kind = kind;
  return e;
}

ExprPtr parse_or(text::Scanner& s);

ExprPtr parse_primary(text::Scanner& s) {
  s.skip_ws();
  std::int64_t iv;
  if (s.peek_string()) {
    auto e = node(Expr::Kind::TextLit);
    e->text_value = s.expect_string();
    return e;
  }
  if (s.try_consume('(')) {
    if (s.try_consume(')')) return node(Expr::Kind::TupleLit); // unit
    std::vector<ExprPtr> elems;
    elems.push_back(parse_or(s));
    bool tuple = false;
    while (s.try_consume(',')) {
      tuple = true;
      elems.push_back(parse_or(s));
    }
    s.expect(')');
    if (!tuple) return elems.front(); // plain grouping
    auto e = node(Expr::Kind::TupleLit);
    e->children = std::move(elems);
    return e;
  }
  if (s.try_consume('[')) {
    auto e = node(Expr::Kind::SeqLit);
    if (!s.try_consume(']')) {
      for (;;) {
        e->children.push_back(parse_or(s));
        if (s.try_consume(']')) break;
        s.expect(',');
      }
    }
    return e;
  }
  if (s.try_integer(iv)) {
    auto e = node(Expr::Kind::IntLit);
    e->int_value = iv;
    return e;
  }
  if (s.try_keyword("true")) {
    auto e = node(Expr::Kind::BoolLit);
    e->bool_value = true;
    return e;
  }
  if (s.try_keyword("false")) {
    auto e = node(Expr::Kind::BoolLit);
    e->bool_value = false;
    return e;
  }
  if (s.try_keyword("if")) {
    auto e = node(Expr::Kind::If);
    e->children.push_back(parse_or(s));
    s.expect_keyword("then");
    e->children.push_back(parse_or(s));
    s.expect_keyword("else");
    e->children.push_back(parse_or(s));
    return e;
  }
  std::string ident = s.identifier_or_empty();
  if (ident.empty())
    fail(ErrorKind::ExprSyntax, "expected an expression at " + s.context());
  if (s.try_consume('(')) {
    auto e = node(Expr::Kind::Call);
    e->text_value = ident;
    if (!s.try_consume(')')) {
      for (;;) {
        e->children.push_back(parse_or(s));
        if (s.try_consume(')')) break;
        s.expect(',');
      }
    }
    return e;
  }
  auto e = node(Expr::Kind::Var);
  e->text_value = ident;
  return e;
}

ExprPtr parse_postfix(text::Scanner& s) {
  ExprPtr e = parse_primary(s);
  for (;;) {
    s.skip_ws();
    if (s.peek() == '.') {
      s.get();
      auto p = node(Expr::Kind::Project);
      p->children.push_back(e);
      p->index = static_cast<int>(s.expect_integer());
      if (p->index < 1)
        fail(ErrorKind::ExprSyntax, "tuple fields are 1-based");
      e = p;
      continue;
    }
    break;
  }
  return e;
}

ExprPtr parse_unary(text::Scanner& s) {
  s.skip_ws();
  if (s.try_keyword("not")) {
    auto e = node(Expr::Kind::Unary);
    e->op = Expr::Op::Not;
    e->children.push_back(parse_unary(s));
    return e;
  }
  if (s.peek() == '-') {
    // Negative literals lex through try_integer; this handles -expr.
    size_t probe = 0;
    (void)probe;
    s.get();
    auto e = node(Expr::Kind::Unary);
    e->op = Expr::Op::Neg;
    e->children.push_back(parse_unary(s));
    return e;
  }
  return parse_postfix(s);
}

ExprPtr binary(Expr::Op op, ExprPtr lhs, ExprPtr rhs) {
  auto e = node(Expr::Kind::Binary);
  e->op = op;
  e->children = {std::move(lhs), std::move(rhs)};
  return e;
}

ExprPtr parse_mul(text::Scanner& s) {
  ExprPtr e = parse_unary(s);
  for (;;) {
    s.skip_ws();
    if (s.try_consume('*')) {
      e = binary(Expr::Op::Mul, e, parse_unary(s));
    } else if (s.try_keyword("div")) {
      e = binary(Expr::Op::Div, e, parse_unary(s));
    } else if (s.try_keyword("mod")) {
      e = binary(Expr::Op::Mod, e, parse_unary(s));
    } else {
      return e;
    }
  }
}

ExprPtr parse_add(text::Scanner& s) {
  ExprPtr e = parse_mul(s);
  for (;;) {
    s.skip_ws();
    char c = s.peek();
    if (c == '+') {
      s.get();
      e = binary(Expr::Op::Add, e, parse_mul(s));
    } else if (c == '-') {
      // don't swallow '->'
      s.get();
      if (s.peek() == '>') {
        // put it back conceptually: we already consumed '-'; signal error
        fail(ErrorKind::ExprSyntax, "unexpected '->' inside expression at " +
                                        s.context());
      }
      e = binary(Expr::Op::Sub, e, parse_mul(s));
    } else {
      return e;
    }
  }
}

ExprPtr parse_cmp(text::Scanner& s) {
  ExprPtr e = parse_add(s);
  s.skip_ws();
  char c = s.peek();
  if (c == '=') {
    s.get();
    if (s.peek() == '=') s.get();
    return binary(Expr::Op::Eq, e, parse_add(s));
  }
  if (c == '!') {
    s.get();
    s.expect('=');
    return binary(Expr::Op::Ne, e, parse_add(s));
  }
  if (c == '<') {
    s.get();
    if (s.peek() == '>') {
      s.get();
      return binary(Expr::Op::Ne, e, parse_add(s));
    }
    if (s.peek() == '=') {
      s.get();
      return binary(Expr::Op::Le, e, parse_add(s));
    }
    return binary(Expr::Op::Lt, e, parse_add(s));
  }
  if (c == '>') {
    s.get();
    if (s.peek() == '=') {
      s.get();
      return binary(Expr::Op::Ge, e, parse_add(s));
    }
    return binary(Expr::Op::Gt, e, parse_add(s));
  }
  return e;
}

ExprPtr parse_and(text::Scanner& s) {
  ExprPtr e = parse_cmp(s);
  while (s.try_keyword("and")) e = binary(Expr::Op::And, e, parse_cmp(s));
  return e;
}

ExprPtr parse_or(text::Scanner& s) {
  ExprPtr e = parse_and(s);
  while (s.try_keyword("or")) e = binary(Expr::Op::Or, e, parse_and(s));
  return e;
}

} // namespace

ExprPtr parse_expr(text::Scanner& s) { return parse_or(s); }

ExprPtr parse_expr(const std::string& source) {
  text::Scanner s(source, "<expr>");
  ExprPtr e = parse_or(s);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::ExprSyntax, "trailing input after expression: " + source);
  return e;
}

std::vector<Stmt> parse_block(text::Scanner& s) {
  std::vector<Stmt> stmts;
  s.expect('{');
  for (;;) {
    if (s.try_consume('}')) break;
    Stmt stmt;
    stmt.target = s.expect_identifier("assignment target");
    s.expect('=');
    stmt.value = parse_or(s);
    stmts.push_back(std::move(stmt));
    if (!s.try_consume(';')) {
      s.expect('}');
      break;
    }
  }
  return stmts;
}

std::vector<Stmt> parse_block(const std::string& source) {
  text::Scanner s(source, "<action>");
  auto stmts = parse_block(s);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::ExprSyntax, "trailing input after action block");
  return stmts;
}

namespace {

const char* op_text(Expr::Op op) {
  switch (op) {
    case Expr::Op::Neg: return "-";
    case Expr::Op::Not: return "not ";
    case Expr::Op::Add: return " + ";
    case Expr::Op::Sub: return " - ";
    case Expr::Op::Mul: return " * ";
    case Expr::Op::Div: return " div ";
    case Expr::Op::Mod: return " mod ";
    case Expr::Op::Eq: return " = ";
    case Expr::Op::Ne: return " != ";
    case Expr::Op::Lt: return " < ";
    case Expr::Op::Le: return " <= ";
    case Expr::Op::Gt: return " > ";
    case Expr::Op::Ge: return " >= ";
    case Expr::Op::And: return " and ";
    case Expr::Op::Or: return " or ";
  }
  return "?";
}

} // namespace

std::string Expr::render() const {
  switch (kind) {
    case Kind::IntLit: return std::to_string(int_value);
    case Kind::BoolLit: return bool_value ? "true" : "false";
    case Kind::TextLit: {
      std::string out = "\"";
      for (char c : text_value) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
    case Kind::TupleLit: {
      std::string out = "(";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) out += ", ";
        out += children[i]->render();
      }
      return out + ")";
    }
    case Kind::SeqLit: {
      std::string out = "[";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) out += ", ";
        out += children[i]->render();
      }
      return out + "]";
    }
    case Kind::Var: return text_value;
    case Kind::Unary:
      return "(" + std::string(op_text(op)) + children[0]->render() + ")";
    case Kind::Binary:
      return "(" + children[0]->render() + op_text(op) + children[1]->render() +
             ")";
    case Kind::If:
      return "if " + children[0]->render() + " then " + children[1]->render() +
             " else " + children[2]->render();
    case Kind::Call: {
      std::string out = text_value + "(";
      for (size_t i = 0; i < children.size(); ++i) {
        if (i) out += ", ";
        out += children[i]->render();
      }
      return out + ")";
    }
    case Kind::Project:
      return children[0]->render() + "." + std::to_string(index);
  }
  return "?";
}

std::string render_block(const std::vector<Stmt>& stmts) {
  std::string out = "{ ";
  for (const auto& s : stmts) out += s.target + " = " + s.value->render() + "; ";
  return out + "}";
}

bool contains_choose(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Call && e->text_value == "choose") return true;
  return std::any_of(e->children.begin(), e->children.end(), contains_choose);
}

} // namespace cmv::colored
