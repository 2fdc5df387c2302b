#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cmv {

// Type system shared by event parameters, state variables and colored
// tokens: INT, BOOL, TEXT, tuple(...), seq(T), plus named domain types
// that only participate in semantic matching (they have no values).
class TypeName {
public:
  enum class Tag { Int, Bool, Text, Tuple, Seq, Named };

  static TypeName integer() { return TypeName(Tag::Int); }
  static TypeName boolean() { return TypeName(Tag::Bool); }
  static TypeName text() { return TypeName(Tag::Text); }
  static TypeName tuple(std::vector<TypeName> elems);
  static TypeName seq(TypeName elem);
  static TypeName named(std::string term);
  // Unit type used for parameterless events; a single blank token inhabits
  // it. Represented as an empty tuple.
  static TypeName null() { return tuple({}); }

  Tag tag() const { return tag_; }
  bool is_null() const { return tag_ == Tag::Tuple && elems_.empty(); }
  const std::vector<TypeName>& elements() const { return elems_; }
  const TypeName& element() const { return elems_.front(); }
  const std::string& term() const { return name_; }

  // Named types cannot carry values; everything else can.
  bool is_concrete() const;

  std::string render() const;

  bool operator==(const TypeName& other) const;
  bool operator!=(const TypeName& other) const { return !(*this == other); }

private:
  explicit TypeName(Tag tag) : tag_(tag) {}
  Tag tag_;
  std::vector<TypeName> elems_; // Tuple: members; Seq: single element
  std::string name_;            // Named only
};

// A tagged runtime datum. Values always carry their type; there is no
// implicit coercion anywhere in the engine.
class Value {
public:
  static Value integer(std::int64_t v);
  static Value boolean(bool v);
  static Value text(std::string v);
  static Value tuple(std::vector<Value> elems);
  static Value seq(TypeName elem_type, std::vector<Value> elems);
  static Value unit() { return tuple({}); }

  const TypeName& type() const { return type_; }
  std::int64_t as_int() const;
  bool as_bool() const;
  const std::string& as_text() const;
  const std::vector<Value>& elements() const { return elems_; }

  std::string render() const;

  bool operator==(const Value& other) const;
  bool operator!=(const Value& other) const { return !(*this == other); }
  // Total order used for canonical marking serialization: INT < BOOL <
  // TEXT < composite, lexicographic within a kind.
  bool operator<(const Value& other) const;

private:
  explicit Value(TypeName t) : type_(std::move(t)) {}
  TypeName type_;
  std::int64_t int_ = 0;
  bool bool_ = false;
  std::string text_;
  std::vector<Value> elems_;
};

// Parses the textual type grammar: INT | BOOL | TEXT | tuple(T,...) |
// seq(T) | identifier. Throws Error(Syntax) on malformed input.
TypeName parse_type(const std::string& text);

} // namespace cmv
