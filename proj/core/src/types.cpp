#include "cmv/types.hpp"

#include <algorithm>
#include <sstream>

#include "cmv/diag.hpp"
#include "cmv/text.hpp"

namespace cmv {

const char* to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Syntax: return "SyntaxError";
    case ErrorKind::Reference: return "ReferenceError";
    case ErrorKind::DuplicateId: return "DuplicateIdError";
    case ErrorKind::UnknownMember: return "UnknownMemberError";
    case ErrorKind::DanglingAction: return "DanglingActionError";
    case ErrorKind::BaseMismatch: return "BaseMismatchError";
    case ErrorKind::ExprSyntax: return "ExprSyntaxError";
    case ErrorKind::Type: return "TypeError";
    case ErrorKind::UnknownTransition: return "UnknownTransitionError";
    case ErrorKind::NotEnabled: return "NotEnabledError";
    case ErrorKind::UnpairedEvent: return "UnpairedEventError";
    case ErrorKind::ColorMismatch: return "ColorMismatchError";
    case ErrorKind::PortTag: return "PortTagError";
    case ErrorKind::StaleBinding: return "StaleBindingError";
    case ErrorKind::DivByZero: return "DivByZero";
    case ErrorKind::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::UnboundVariable: return "UnboundVariable";
    case ErrorKind::UnknownPredicate: return "UnknownPredicateError";
    case ErrorKind::UnknownTechnique: return "UnknownTechniqueError";
    case ErrorKind::Io: return "IoError";
  }
  return "Error";
}

TypeName TypeName::tuple(std::vector<TypeName> elems) {
  TypeName t(Tag::Tuple);
  t.elems_ = std::move(elems);
  return t;
}

TypeName TypeName::seq(TypeName elem) {
  TypeName t(Tag::Seq);
  t.elems_.push_back(std::move(elem));
  return t;
}

TypeName TypeName::named(std::string term) {
  TypeName t(Tag::Named);
  t.name_ = std::move(term);
  return t;
}

bool TypeName::is_concrete() const {
  switch (tag_) {
    case Tag::Int:
    case Tag::Bool:
    case Tag::Text:
      return true;
    case Tag::Named:
      return false;
    case Tag::Tuple:
    case Tag::Seq:
      return std::all_of(elems_.begin(), elems_.end(),
                         [](const TypeName& t) { return t.is_concrete(); });
  }
  return false;
}

std::string TypeName::render() const {
  switch (tag_) {
    case Tag::Int: return "INT";
    case Tag::Bool: return "BOOL";
    case Tag::Text: return "TEXT";
    case Tag::Named: return name_;
    case Tag::Seq: return "seq(" + elems_.front().render() + ")";
    case Tag::Tuple: {
      if (elems_.empty()) return "NULL";
      std::string out = "tuple(";
      for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ",";
        out += elems_[i].render();
      }
      return out + ")";
    }
  }
  return "?";
}

bool TypeName::operator==(const TypeName& other) const {
  if (tag_ != other.tag_) return false;
  if (tag_ == Tag::Named) return name_ == other.name_;
  return elems_ == other.elems_;
}

Value Value::integer(std::int64_t v) {
  Value val(TypeName::integer());
  val.int_ = v;
  return val;
}

Value Value::boolean(bool v) {
  Value val(TypeName::boolean());
  val.bool_ = v;
  return val;
}

Value Value::text(std::string v) {
  Value val(TypeName::text());
  val.text_ = std::move(v);
  return val;
}

Value Value::tuple(std::vector<Value> elems) {
  std::vector<TypeName> types;
  types.reserve(elems.size());
  for (const auto& e : elems) types.push_back(e.type());
  Value val(TypeName::tuple(std::move(types)));
  val.elems_ = std::move(elems);
  return val;
}

Value Value::seq(TypeName elem_type, std::vector<Value> elems) {
  Value val(TypeName::seq(std::move(elem_type)));
  val.elems_ = std::move(elems);
  return val;
}

std::int64_t Value::as_int() const {
  if (type_.tag() != TypeName::Tag::Int)
    fail(ErrorKind::Type, "expected INT, got " + type_.render());
  return int_;
}

bool Value::as_bool() const {
  if (type_.tag() != TypeName::Tag::Bool)
    fail(ErrorKind::Type, "expected BOOL, got " + type_.render());
  return bool_;
}

const std::string& Value::as_text() const {
  if (type_.tag() != TypeName::Tag::Text)
    fail(ErrorKind::Type, "expected TEXT, got " + type_.render());
  return text_;
}

std::string Value::render() const {
  switch (type_.tag()) {
    case TypeName::Tag::Int: return std::to_string(int_);
    case TypeName::Tag::Bool: return bool_ ? "true" : "false";
    case TypeName::Tag::Text: {
      std::string out = "\"";
      for (char c : text_) {
        if (c == '"' || c == '\\') out += '\\';
        out += c;
      }
      return out + "\"";
    }
    case TypeName::Tag::Tuple: {
      if (elems_.empty()) return "()";
      std::string out = "(";
      for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ",";
        out += elems_[i].render();
      }
      return out + ")";
    }
    case TypeName::Tag::Seq: {
      std::string out = "[";
      for (size_t i = 0; i < elems_.size(); ++i) {
        if (i) out += ",";
        out += elems_[i].render();
      }
      return out + "]";
    }
    case TypeName::Tag::Named:
      return "<" + type_.term() + ">";
  }
  return "?";
}

bool Value::operator==(const Value& other) const {
  if (!(type_ == other.type_)) return false;
  switch (type_.tag()) {
    case TypeName::Tag::Int: return int_ == other.int_;
    case TypeName::Tag::Bool: return bool_ == other.bool_;
    case TypeName::Tag::Text: return text_ == other.text_;
    default: return elems_ == other.elems_;
  }
}

namespace {
int kind_rank(const TypeName& t) {
  switch (t.tag()) {
    case TypeName::Tag::Int: return 0;
    case TypeName::Tag::Bool: return 1;
    case TypeName::Tag::Text: return 2;
    case TypeName::Tag::Tuple: return 3;
    case TypeName::Tag::Seq: return 4;
    case TypeName::Tag::Named: return 5;
  }
  return 6;
}
} // namespace

bool Value::operator<(const Value& other) const {
  int lr = kind_rank(type_), rr = kind_rank(other.type_);
  if (lr != rr) return lr < rr;
  switch (type_.tag()) {
    case TypeName::Tag::Int: return int_ < other.int_;
    case TypeName::Tag::Bool: return bool_ < other.bool_;
    case TypeName::Tag::Text: return text_ < other.text_;
    default:
      return std::lexicographical_compare(elems_.begin(), elems_.end(),
                                          other.elems_.begin(),
                                          other.elems_.end());
  }
}

namespace {

TypeName parse_type_at(text::Scanner& s) {
  s.skip_ws();
  if (s.try_keyword("INT")) return TypeName::integer();
  if (s.try_keyword("BOOL")) return TypeName::boolean();
  if (s.try_keyword("TEXT")) return TypeName::text();
  if (s.try_keyword("NULL")) return TypeName::null();
  if (s.try_keyword("tuple")) {
    s.expect('(');
    std::vector<TypeName> elems;
    if (!s.try_consume(')')) {
      for (;;) {
        elems.push_back(parse_type_at(s));
        if (s.try_consume(')')) break;
        s.expect(',');
      }
    }
    return TypeName::tuple(std::move(elems));
  }
  if (s.try_keyword("seq")) {
    s.expect('(');
    TypeName elem = parse_type_at(s);
    s.expect(')');
    return TypeName::seq(std::move(elem));
  }
  std::string ident = s.identifier_or_empty();
  if (ident.empty())
    fail(ErrorKind::Syntax, "expected a type at " + s.context());
  return TypeName::named(std::move(ident));
}

} // namespace

TypeName parse_type(const std::string& str) {
  text::Scanner s(str, "<type>");
  TypeName t = parse_type_at(s);
  s.skip_ws();
  if (!s.at_end())
    fail(ErrorKind::Syntax, "trailing characters after type: " + str);
  return t;
}

} // namespace cmv
