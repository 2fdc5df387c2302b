#include "cmv/text.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "cmv/diag.hpp"

namespace cmv::text {

Scanner::Scanner(std::string_view input, std::string origin)
    : buffer_(input), origin_(std::move(origin)) {
  input_ = buffer_;
}

char Scanner::get() {
  if (at_end()) return '\0';
  char c = input_[pos_++];
  if (c == '\n') ++line_;
  return c;
}

void Scanner::skip_ws() {
  while (!at_end()) {
    char c = peek();
    if (c == '#') {
      while (!at_end() && peek() != '\n') get();
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      get();
    } else {
      break;
    }
  }
}

bool Scanner::try_consume(char c) {
  skip_ws();
  if (peek() == c) {
    get();
    return true;
  }
  return false;
}

void Scanner::expect(char c) {
  skip_ws();
  if (peek() != c)
    fail(ErrorKind::Syntax, std::string("expected '") + c + "' at " + context());
  get();
}

namespace {
bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' ||
         c == '/';
}
} // namespace

std::string Scanner::identifier_or_empty() {
  skip_ws();
  if (at_end() || !ident_start(peek())) return {};
  std::string out;
  while (!at_end() && ident_char(peek())) out += get();
  return out;
}

std::string Scanner::expect_identifier(const std::string& what) {
  std::string id = identifier_or_empty();
  if (id.empty())
    fail(ErrorKind::Syntax, "expected " + what + " at " + context());
  return id;
}

bool Scanner::try_keyword(std::string_view kw) {
  skip_ws();
  size_t save_pos = pos_;
  int save_line = line_;
  for (char k : kw) {
    if (at_end() || peek() != k) {
      pos_ = save_pos;
      line_ = save_line;
      return false;
    }
    get();
  }
  if (!at_end() && ident_char(peek())) {
    pos_ = save_pos;
    line_ = save_line;
    return false;
  }
  return true;
}

void Scanner::expect_keyword(std::string_view kw) {
  if (!try_keyword(kw))
    fail(ErrorKind::Syntax,
         "expected '" + std::string(kw) + "' at " + context());
}

bool Scanner::try_integer(std::int64_t& out) {
  skip_ws();
  size_t save_pos = pos_;
  int save_line = line_;
  bool neg = false;
  if (peek() == '-') {
    neg = true;
    get();
  }
  if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
    pos_ = save_pos;
    line_ = save_line;
    return false;
  }
  std::int64_t v = 0;
  while (!at_end() && std::isdigit(static_cast<unsigned char>(peek())))
    v = v * 10 + (get() - '0');
  out = neg ? -v : v;
  return true;
}

std::int64_t Scanner::expect_integer() {
  std::int64_t v;
  if (!try_integer(v))
    fail(ErrorKind::Syntax, "expected an integer at " + context());
  return v;
}

bool Scanner::peek_string() const {
  size_t p = pos_;
  while (p < input_.size() &&
         std::isspace(static_cast<unsigned char>(input_[p])))
    ++p;
  return p < input_.size() && input_[p] == '"';
}

std::string Scanner::expect_string() {
  skip_ws();
  if (peek() != '"')
    fail(ErrorKind::Syntax, "expected a string literal at " + context());
  get();
  std::string out;
  for (;;) {
    if (at_end())
      fail(ErrorKind::Syntax, "unterminated string at " + context());
    char c = get();
    if (c == '"') break;
    if (c == '\\') {
      if (at_end())
        fail(ErrorKind::Syntax, "unterminated escape at " + context());
      char e = get();
      switch (e) {
        case 'n': out += '\n'; break;
        case 't': out += '\t'; break;
        default: out += e; break;
      }
    } else {
      out += c;
    }
  }
  return out;
}

std::string Scanner::rest_of_line() {
  std::string out;
  while (!at_end() && peek() != '\n') out += get();
  if (!at_end()) get();
  return trim(out);
}

std::string Scanner::context() const {
  return origin_ + ":" + std::to_string(line_);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::Io, "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorKind::Io, "cannot write " + path);
  out << content;
}

std::string trim(const std::string& s) {
  size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

} // namespace cmv::text
