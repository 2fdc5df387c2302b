#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace cmv::text {

// Minimal cursor over a document. All the front-end grammars (component
// DSL, taxonomy, requirements, expressions, predicates) tokenize through
// this one scanner so error reporting looks the same everywhere.
class Scanner {
public:
  Scanner(std::string_view input, std::string origin);

  bool at_end() const { return pos_ >= input_.size(); }
  char peek() const { return at_end() ? '\0' : input_[pos_]; }
  char get();

  // Whitespace and #-to-end-of-line comments.
  void skip_ws();

  bool try_consume(char c);
  void expect(char c);

  // Identifier: letter followed by letters/digits/_/-/. , or empty.
  std::string identifier_or_empty();
  std::string expect_identifier(const std::string& what);

  // Keyword match with identifier boundary (does not consume on mismatch).
  bool try_keyword(std::string_view kw);
  void expect_keyword(std::string_view kw);

  std::int64_t expect_integer();
  bool try_integer(std::int64_t& out);

  // Double-quoted with backslash escapes.
  std::string expect_string();
  bool peek_string() const;

  // Rest of the current line, trimmed; cursor moves past the newline.
  std::string rest_of_line();

  int line() const { return line_; }
  std::string context() const;

private:
  std::string_view input_;
  std::string buffer_;
  std::string origin_;
  size_t pos_ = 0;
  int line_ = 1;
};

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);
std::string trim(const std::string& s);

} // namespace cmv::text
